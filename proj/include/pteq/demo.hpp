#pragma once

#include <pteq/json_io.hpp>
#include <pteq/n2.hpp>
#include <pteq/pte.hpp>
#include <pteq/quadform.hpp>
#include <pteq/report.hpp>

#include <chrono>
#include <optional>
#include <utility>

namespace pteq {

/*
 * The bundled worked example: the seven cyclic shifts of (1,1,0,1,0,0,0)
 * (the characteristic vectors of the Fano plane lines) and of its reversal
 * (0,0,1,0,1,1,0) form a degree-2 size-7 solution pair in dimension 7.
 * Normalizing sends the first orbit to the identity and the second to the
 * circulant generated by (-1/2, 1/2, 1/2, 0, 1/2, 0, 0); that circulant is a
 * member of the orthogonal-fixing-ones group and conjugates to a block that
 * preserves diag[2, 6, 12, 20, 30, 42].
 */

inline Point fano_generator() {
    return {Rational(1), Rational(1), Rational(0), Rational(1),
            Rational(0), Rational(0), Rational(0)};
}

inline Point fano_reverse_generator() {
    return {Rational(0), Rational(0), Rational(1), Rational(0),
            Rational(1), Rational(1), Rational(0)};
}

inline Point fano_normalized_b_generator() {
    return {Rational(-1, 2), Rational(1, 2), Rational(1, 2), Rational(0),
            Rational(1, 2), Rational(0), Rational(0)};
}

/// The built-in (X, Y) orbit pair as a degree-2 solution candidate.
inline PteSolution fano_solution() {
    return PteSolution(7, 7, 2, cyclic_orbit(fano_generator()),
                       cyclic_orbit(fano_reverse_generator()));
}

/*
 * Runs the whole pipeline on the built-in orbits (or a caller-supplied
 * fixture): verify at degree 2, normalize, compare against the expected
 * normalized pair, map to the group, conjugate to block form, and certify
 * the block against diag[2, 6, ..., 42]. Each stage lands in the report;
 * the first failing stage flips the status to violation and later stages
 * are reported as skipped.
 */
inline RunReport demo_fano(const std::optional<PteSolution>& fixture = std::nullopt) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport report;
    report.verb = "demo-fano";
    Json stages = Json::array();
    bool failed = false;

    auto stage = [&](const char* name, auto&& body) {
        if (failed) {
            stages.push_back(Json{{"stage", name}, {"status", "skipped"}});
            return;
        }
        Json entry{{"stage", name}};
        try {
            if (body(entry)) {
                entry["status"] = "ok";
            } else {
                entry["status"] = "violation";
                failed = true;
                report.status = RunReport::Status::violation;
            }
        } catch (const Error& e) {
            entry["status"] = "error";
            entry["message"] = e.what();
            failed = true;
            report.status = RunReport::Status::error;
        }
        stages.push_back(std::move(entry));
    };

    std::optional<PteSolution> sol;
    std::optional<NormalizedSolution> normalized;
    std::optional<N2Element> element;

    stage("orbits", [&](Json& entry) {
        sol = fixture ? *fixture : fano_solution();
        entry["r"] = sol->r;
        entry["n"] = sol->n;
        entry["m"] = sol->m;
        return true;
    });

    stage("verify", [&](Json& entry) {
        VerifyResult res = verify(*sol);
        entry["disjoint"] = res.disjoint;
        if (!res.ok) {
            entry["violated_identity"] = Json{{"exponents", res.violation->exponents},
                                              {"lhs", res.violation->lhs.str()},
                                              {"rhs", res.violation->rhs.str()}};
            return false;
        }
        return true;
    });

    stage("normalize", [&](Json& entry) {
        normalized = normalize(*sol);
        entry["pivot_columns"] = normalized->pivot_columns;
        entry["pivots_in_b"] = normalized->pivots_in_b;
        return true;
    });

    stage("compare-normal-form", [&](Json& entry) {
        Point e1(7, Rational(0));
        e1[0] = Rational(1);
        const Matrix expected_a = cyclic_orbit(e1); // the identity, in orbit order
        const Matrix expected_b = cyclic_orbit(fano_normalized_b_generator());
        const bool a_ok = normalized->base.A == expected_a;
        const bool b_ok = normalized->base.B == expected_b;
        entry["A_matches"] = a_ok;
        entry["B_matches"] = b_ok;
        return a_ok && b_ok;
    });

    stage("group-element", [&](Json& entry) {
        element = from_pte(normalized->base.A, normalized->base.B);
        entry["n"] = element->n();
        return true;
    });

    stage("block-form", [&](Json& entry) {
        const ConjugationBasis basis = ConjugationBasis::standard(7);
        const Matrix block = to_block(*element, basis);
        const Matrix expected_qprime = pronic_form(7).gram();
        const bool qprime_ok = basis.Qprime() == expected_qprime;
        const bool preserved = block.transpose() * expected_qprime * block == expected_qprime;
        entry["qprime"] = to_json(expected_qprime);
        entry["qprime_matches"] = qprime_ok;
        entry["block_preserves_qprime"] = preserved;
        return qprime_ok && preserved;
    });

    report.details = Json{{"stages", std::move(stages)}};
    report.elapsed =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);
    return report;
}

} // namespace pteq
