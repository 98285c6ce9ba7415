// pteq: exact-arithmetic toolkit for power-sum solution pairs, the rational
// orthogonal matrices fixing the all-ones vector, quadratic form utilities,
// and ellipsoidal design verification/search. All I/O is JSON; see README.

#include <pteq/pteq.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace pteq;

struct Ctx {
    bool json = false;
    std::uint64_t seed = 0;
    std::string out_file;
    int exit_code = 0;
};

int run_verb(Ctx& ctx, const std::string& verb, const std::function<void(RunReport&)>& body) {
    RunReport rep;
    rep.verb = verb;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(rep);
    } catch (const Error& e) {
        rep.status = RunReport::Status::error;
        rep.details = Json{{"message", e.what()}};
    } catch (const std::exception& e) {
        rep.status = RunReport::Status::error;
        rep.details = Json{{"message", e.what()}};
    }
    rep.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - t0);
    if (ctx.json)
        std::cout << rep.to_json().dump(2) << "\n";
    else
        rep.print_human(std::cout);
    return rep.exit_code();
}

// Writes the artifact to -o when given, otherwise inlines it in the report.
void emit_artifact(Ctx& ctx, RunReport& rep, const char* key, const Json& value) {
    if (!ctx.out_file.empty()) {
        save_json_file(ctx.out_file, value);
        rep.details["output_file"] = ctx.out_file;
    } else {
        rep.details[key] = value;
    }
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
}

Point parse_point(const std::string& s) {
    Point p;
    for (const std::string& t : split_commas(s)) p.push_back(Rational::parse(t));
    if (p.empty()) throw ParseError("empty point: '" + s + "'");
    return p;
}

Permutation parse_permutation(const std::string& s) {
    Permutation p;
    for (const std::string& t : split_commas(s)) {
        try {
            p.push_back(std::stoi(t));
        } catch (const std::exception&) {
            throw ParseError("permutation: bad entry '" + t + "'");
        }
    }
    if (!is_permutation(p)) throw ParseError("permutation: '" + s + "' is not a bijection of 0..n-1");
    return p;
}

QuadraticForm resolve_form(const std::string& form_file, int preset_n) {
    if (preset_n > 0 && !form_file.empty())
        throw ParseError("pass either --form or --paper-form-n, not both");
    if (preset_n > 0) return triangular_form(preset_n);
    if (form_file.empty()) throw ParseError("need --form <Q.json> or --paper-form-n <n>");
    return QuadraticForm(matrix_from_json(load_json_file(form_file)));
}

Json membership_witness(const Matrix& m, const MembershipCheck& chk) {
    Json w{{"failed", chk.failed_condition}};
    const int n = m.rows();
    if (chk.failed_condition == "M M^T != I") {
        w["lhs"] = to_json(m * m.transpose());
        w["rhs"] = to_json(Matrix::identity(n));
    } else {
        w["lhs"] = to_json(m * Matrix::all_ones(n));
        w["rhs"] = to_json(Matrix::all_ones(n));
    }
    return w;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rational toolkit: power-sum pairs, orthogonal groups, ellipsoidal designs"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may appear after the subcommand
    Ctx ctx;
    app.add_flag("--json", ctx.json, "emit a machine-readable report on stdout");
    app.add_option("--seed", ctx.seed, "seed for randomized verbs")->default_val(0);
    app.add_option("-o,--output", ctx.out_file, "write the produced artifact to this file");

    // ---- verify-pte <file>
    {
        auto* cmd = app.add_subcommand("verify-pte", "check the power-sum identities of a solution file");
        auto file = std::make_shared<std::string>();
        cmd->add_option("file", *file, "solution JSON")->required();
        cmd->callback([&ctx, file] {
            ctx.exit_code = run_verb(ctx, "verify-pte", [&](RunReport& rep) {
                PteSolution sol = solution_from_json(load_json_file(*file));
                VerifyResult res = verify(sol);
                rep.details["r"] = sol.r;
                rep.details["n"] = sol.n;
                rep.details["m"] = sol.m;
                rep.details["ok"] = res.ok;
                rep.details["disjoint"] = res.disjoint;
                if (!res.ok) {
                    rep.status = RunReport::Status::violation;
                    rep.details["violated_identity"] =
                        Json{{"exponents", res.violation->exponents},
                             {"lhs", res.violation->lhs.str()},
                             {"rhs", res.violation->rhs.str()}};
                }
            });
        });
    }

    // ---- normalize <file> [-o out.json]
    {
        auto* cmd = app.add_subcommand("normalize", "row-reduce [A B] to its normalized form");
        auto file = std::make_shared<std::string>();
        cmd->add_option("file", *file, "solution JSON")->required();
        cmd->callback([&ctx, file] {
            ctx.exit_code = run_verb(ctx, "normalize", [&](RunReport& rep) {
                PteSolution sol = solution_from_json(load_json_file(*file));
                NormalizedSolution ns = normalize(sol);
                rep.details["pivot_columns"] = ns.pivot_columns;
                rep.details["pivots_in_b"] = ns.pivots_in_b;
                emit_artifact(ctx, rep, "solution", to_json(ns.base));
            });
        });
    }

    // ---- demo-fano [fixture]
    {
        auto* cmd = app.add_subcommand("demo-fano", "run the bundled orbit example end to end");
        auto fixture = std::make_shared<std::string>();
        cmd->add_option("fixture", *fixture, "optional solution JSON replacing the built-in orbits");
        cmd->callback([&ctx, fixture] {
            ctx.exit_code = run_verb(ctx, "demo-fano", [&](RunReport& rep) {
                std::optional<PteSolution> sol;
                if (!fixture->empty()) sol = solution_from_json(load_json_file(*fixture));
                RunReport demo = demo_fano(sol);
                rep.status = demo.status;
                rep.details = demo.details;
            });
        });
    }

    // ---- n2 group verbs
    {
        auto* n2 = app.add_subcommand("n2", "the group of orthogonal matrices fixing the all-ones vector");
        n2->require_subcommand(1);

        auto* check = n2->add_subcommand("check", "exact membership test");
        auto check_file = std::make_shared<std::string>();
        check->add_option("file", *check_file, "matrix JSON")->required();
        check->callback([&ctx, check_file] {
            ctx.exit_code = run_verb(ctx, "n2 check", [&](RunReport& rep) {
                Matrix m = matrix_from_json(load_json_file(*check_file));
                MembershipCheck chk = membership(m);
                rep.details["ok"] = chk.ok;
                if (!chk.ok) {
                    rep.status = RunReport::Status::violation;
                    rep.details["witness"] = membership_witness(m, chk);
                }
            });
        });

        auto* cay = n2->add_subcommand("cayley", "build (I+S)^{-1}(I-S)R from a certificate");
        auto skew_file = std::make_shared<std::string>();
        auto perm_str = std::make_shared<std::string>();
        cay->add_option("--skew", *skew_file, "skew matrix JSON")->required();
        cay->add_option("--perm", *perm_str, "permutation as 0-indexed images, e.g. \"2,0,1\"")->required();
        cay->callback([&ctx, skew_file, perm_str] {
            ctx.exit_code = run_verb(ctx, "n2 cayley", [&](RunReport& rep) {
                Matrix s = matrix_from_json(load_json_file(*skew_file));
                Permutation perm = parse_permutation(*perm_str);
                N2Element e = cayley(s, perm);
                rep.details["n"] = e.n();
                emit_artifact(ctx, rep, "matrix", to_json(e.matrix()));
            });
        });

        auto* dec = n2->add_subcommand("decompose", "recover a Cayley certificate (S, R)");
        auto dec_file = std::make_shared<std::string>();
        dec->add_option("file", *dec_file, "matrix JSON")->required();
        dec->callback([&ctx, dec_file] {
            ctx.exit_code = run_verb(ctx, "n2 decompose", [&](RunReport& rep) {
                N2Element e = N2Element::from_matrix(matrix_from_json(load_json_file(*dec_file)));
                DecomposeOptions opts;
                opts.seed = ctx.seed;
                CayleyCertificate cert = cayley_decompose(e, opts);
                emit_artifact(ctx, rep, "certificate",
                              Json{{"S", to_json(cert.skew)}, {"perm", to_json(cert.perm)}});
            });
        });

        auto* tob = n2->add_subcommand("to-block", "conjugate to diag(1, B') and return B'");
        auto tob_file = std::make_shared<std::string>();
        tob->add_option("file", *tob_file, "matrix JSON")->required();
        tob->callback([&ctx, tob_file] {
            ctx.exit_code = run_verb(ctx, "n2 to-block", [&](RunReport& rep) {
                N2Element e = N2Element::from_matrix(matrix_from_json(load_json_file(*tob_file)));
                ConjugationBasis basis = ConjugationBasis::standard(e.n());
                Matrix b = to_block(e, basis);
                rep.details["qprime"] = to_json(basis.Qprime());
                emit_artifact(ctx, rep, "block", to_json(b));
            });
        });

        auto* fromb = n2->add_subcommand("from-block", "rebuild the member P diag(1, B') P^{-1}");
        auto fromb_file = std::make_shared<std::string>();
        auto fromb_n = std::make_shared<int>(0);
        fromb->add_option("file", *fromb_file, "block matrix JSON")->required();
        fromb->add_option("--n", *fromb_n, "size of the target group")->required();
        fromb->callback([&ctx, fromb_file, fromb_n] {
            ctx.exit_code = run_verb(ctx, "n2 from-block", [&](RunReport& rep) {
                Matrix b = matrix_from_json(load_json_file(*fromb_file));
                ConjugationBasis basis = ConjugationBasis::standard(*fromb_n);
                N2Element e = from_block(b, basis);
                rep.details["n"] = e.n();
                emit_artifact(ctx, rep, "matrix", to_json(e.matrix()));
            });
        });

        auto* rnd = n2->add_subcommand("random", "sample a random member from a seeded certificate");
        auto rnd_n = std::make_shared<int>(0);
        rnd->add_option("--n", *rnd_n, "size")->required();
        rnd->callback([&ctx, rnd_n] {
            ctx.exit_code = run_verb(ctx, "n2 random", [&](RunReport& rep) {
                if (*rnd_n < 2) throw PreconditionError("n2 random: need --n >= 2");
                std::mt19937_64 rng(ctx.seed);
                N2Element e = random_n2_element(rng, *rnd_n);
                rep.details["n"] = e.n();
                rep.details["seed"] = ctx.seed;
                emit_artifact(ctx, rep, "matrix", to_json(e.matrix()));
            });
        });
    }

    // ---- qf quadratic-form verbs
    {
        auto* qf = app.add_subcommand("qf", "rational quadratic form utilities");
        qf->require_subcommand(1);

        auto* paper = qf->add_subcommand("paper", "the built-in diagonal forms");
        auto paper_n = std::make_shared<int>(0);
        auto prime = std::make_shared<bool>(false);
        paper->add_option("--n", *paper_n, "group size n; the form has dimension n-1")->required();
        paper->add_flag("--prime", *prime, "emit the doubled form diag[2,6,...,n(n-1)]");
        paper->callback([&ctx, paper_n, prime] {
            ctx.exit_code = run_verb(ctx, "qf paper", [&](RunReport& rep) {
                QuadraticForm q = *prime ? pronic_form(*paper_n) : triangular_form(*paper_n);
                rep.details["n"] = *paper_n;
                rep.details["dim"] = q.dim();
                emit_artifact(ctx, rep, "form", to_json(q.gram()));
            });
        });

        auto* member = qf->add_subcommand("member", "test M^T Q M = Q exactly");
        auto member_file = std::make_shared<std::string>();
        auto member_form = std::make_shared<std::string>();
        member->add_option("file", *member_file, "matrix JSON")->required();
        member->add_option("--form", *member_form, "form Gram matrix JSON")->required();
        member->callback([&ctx, member_file, member_form] {
            ctx.exit_code = run_verb(ctx, "qf member", [&](RunReport& rep) {
                Matrix m = matrix_from_json(load_json_file(*member_file));
                QuadraticForm q(matrix_from_json(load_json_file(*member_form)));
                const bool ok = in_orthogonal_group(m, q);
                rep.details["ok"] = ok;
                if (!ok) {
                    rep.status = RunReport::Status::violation;
                    rep.details["witness"] = Json{{"lhs", to_json(m.transpose() * q.gram() * m)},
                                                  {"rhs", to_json(q.gram())}};
                }
            });
        });

        auto* sch = qf->add_subcommand("schoenberg", "similarity-to-identity classification");
        auto sch_n = std::make_shared<std::uint64_t>(0);
        sch->add_option("--n", *sch_n, "group size n")->required();
        sch->callback([&ctx, sch_n] {
            ctx.exit_code = run_verb(ctx, "qf schoenberg", [&](RunReport& rep) {
                SchoenbergResult res = schoenberg_similar_to_identity(*sch_n);
                rep.details["n"] = *sch_n;
                rep.details["similar"] = res.similar;
                rep.details["clause"] = to_string(res.clause);
            });
        });

        auto* wit = qf->add_subcommand("witness", "verify g^T Q1 g = a Q2 exactly");
        auto q1_file = std::make_shared<std::string>();
        auto q2_file = std::make_shared<std::string>();
        auto g_file = std::make_shared<std::string>();
        auto scale = std::make_shared<std::string>("1");
        wit->add_option("q1", *q1_file, "first form JSON")->required();
        wit->add_option("q2", *q2_file, "second form JSON")->required();
        wit->add_option("g", *g_file, "witness matrix JSON")->required();
        wit->add_option("--scale", *scale, "similarity scalar a as p/q")->required();
        wit->callback([&ctx, q1_file, q2_file, g_file, scale] {
            ctx.exit_code = run_verb(ctx, "qf witness", [&](RunReport& rep) {
                QuadraticForm q1(matrix_from_json(load_json_file(*q1_file)));
                QuadraticForm q2(matrix_from_json(load_json_file(*q2_file)));
                Matrix g = matrix_from_json(load_json_file(*g_file));
                Rational a = Rational::parse(*scale);
                const bool ok = equivalence_witness_check(q1, q2, g, a);
                rep.details["ok"] = ok;
                rep.details["scale"] = a.str();
                if (!ok) {
                    rep.status = RunReport::Status::violation;
                    rep.details["witness"] = Json{{"lhs", to_json(g.transpose() * q1.gram() * g)},
                                                  {"rhs", to_json(a * q2.gram())}};
                }
            });
        });
    }

    // ---- design verbs
    {
        auto* design = app.add_subcommand("design", "ellipsoidal design verification and search");
        design->require_subcommand(1);

        auto* ver = design->add_subcommand("verify", "pair-sum strength test of an instance file");
        auto ver_file = std::make_shared<std::string>();
        ver->add_option("file", *ver_file, "design instance JSON")->required();
        ver->callback([&ctx, ver_file] {
            ctx.exit_code = run_verb(ctx, "design verify", [&](RunReport& rep) {
                DesignInstance inst = instance_from_json(load_json_file(*ver_file));
                DesignCheck chk = verify_design(inst);
                rep.details["t"] = inst.strength_target;
                rep.details["points"] = inst.points.size();
                rep.details["ok"] = chk.ok;
                if (!chk.ok) {
                    rep.status = RunReport::Status::violation;
                    rep.details["witness"] = Json{{"failing_degree", chk.failing_degree},
                                                  {"pair_sum", chk.failing_sum.str()},
                                                  {"expected", "0"}};
                }
            });
        });

        auto* ts = design->add_subcommand("tight-size", "the tight lower bound on |X|");
        auto ts_n = std::make_shared<int>(0);
        auto ts_t = std::make_shared<int>(0);
        ts->add_option("--n", *ts_n, "ambient dimension")->required();
        ts->add_option("--t", *ts_t, "strength")->required();
        ts->callback([&ctx, ts_n, ts_t] {
            ctx.exit_code = run_verb(ctx, "design tight-size", [&](RunReport& rep) {
                rep.details["n"] = *ts_n;
                rep.details["t"] = *ts_t;
                rep.details["size"] = tight_size(*ts_n, *ts_t).get_str();
            });
        });

        auto* pts = design->add_subcommand("points", "enumerate rational points by chords from a base");
        auto pts_form = std::make_shared<std::string>();
        auto pts_preset = std::make_shared<int>(0);
        auto pts_r = std::make_shared<std::string>("1");
        auto pts_base = std::make_shared<std::string>();
        auto pts_height = std::make_shared<int>(0);
        auto pts_scan = std::make_shared<int>(8);
        pts->add_option("--form", *pts_form, "form Gram matrix JSON");
        pts->add_option("--paper-form-n", *pts_preset, "use the built-in form for this n");
        pts->add_option("--r", *pts_r, "radius p/q")->required();
        pts->add_option("--base", *pts_base, "base point, e.g. \"1,0\" (found by scan when omitted)");
        pts->add_option("--height", *pts_height, "direction height bound")->required();
        pts->add_option("--scan-height", *pts_scan, "height bound for base discovery");
        pts->callback([&ctx, pts_form, pts_preset, pts_r, pts_base, pts_height, pts_scan] {
            ctx.exit_code = run_verb(ctx, "design points", [&](RunReport& rep) {
                QuadraticForm q = resolve_form(*pts_form, *pts_preset);
                Rational r = Rational::parse(*pts_r);
                Point base;
                if (pts_base->empty()) {
                    auto found = find_point_by_scan(q, r, *pts_scan);
                    if (!found)
                        throw PreconditionError("no base point found by scan; pass --base");
                    base = *found;
                } else {
                    base = parse_point(*pts_base);
                }
                std::vector<Point> out = enumerate_rational_points(q, r, base, *pts_height);
                rep.details["base"] = to_json(base);
                rep.details["count"] = out.size();
                emit_artifact(ctx, rep, "points", points_to_json(out));
            });
        });

        auto* srch = design->add_subcommand("search", "subset search for tight designs in a point pool");
        auto s_form = std::make_shared<std::string>();
        auto s_preset = std::make_shared<int>(0);
        auto s_r = std::make_shared<std::string>("1");
        auto s_t = std::make_shared<int>(0);
        auto s_pool = std::make_shared<std::string>();
        auto s_budget = std::make_shared<std::uint64_t>(1'000'000);
        auto s_workers = std::make_shared<int>(1);
        srch->add_option("--form", *s_form, "form Gram matrix JSON");
        srch->add_option("--paper-form-n", *s_preset, "use the built-in form for this n");
        srch->add_option("--r", *s_r, "radius p/q")->required();
        srch->add_option("--t", *s_t, "target strength")->required();
        srch->add_option("--pool", *s_pool, "candidate points JSON")->required();
        srch->add_option("--budget", *s_budget, "node budget");
        srch->add_option("--workers", *s_workers, "worker threads for the subtree fan-out");
        srch->callback([&ctx, s_form, s_preset, s_r, s_t, s_pool, s_budget, s_workers] {
            ctx.exit_code = run_verb(ctx, "design search", [&](RunReport& rep) {
                QuadraticForm q = resolve_form(*s_form, *s_preset);
                Rational r = Rational::parse(*s_r);
                std::vector<Point> pool = points_from_json(load_json_file(*s_pool));
                SearchOptions opts;
                opts.node_budget = *s_budget;
                opts.workers = *s_workers;
                SearchReport res = search_tight_designs(q, r, *s_t, pool, opts);
                rep.details["t"] = *s_t;
                rep.details["pool"] = pool.size();
                rep.details["target_size"] = res.target_size;
                rep.details["nodes_visited"] = res.nodes_visited;
                rep.details["pruned_branches"] = res.pruned_branches;
                rep.details["budget_exhausted"] = res.budget_exhausted;
                Json hits = Json::array();
                for (const auto& h : res.hits) {
                    Json subset = Json::array();
                    for (size_t idx : h) subset.push_back(to_json(pool[idx]));
                    hits.push_back(std::move(subset));
                }
                rep.details["hits"] = res.hits.size();
                emit_artifact(ctx, rep, "designs", hits);
            });
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return ctx.exit_code;
}
