#pragma once

#include <pteq/designs.hpp>
#include <pteq/errors.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace pteq {

struct SearchOptions {
    std::uint64_t node_budget = 1'000'000; ///< visited-node cap; advisory under workers > 1
    int workers = 1;                       ///< subtree fan-out; 1 keeps the walk fully deterministic
};

struct SearchReport {
    std::vector<std::vector<size_t>> hits; ///< pool indices of each subset found, canonical order
    std::uint64_t nodes_visited = 0;
    std::uint64_t pruned_branches = 0;
    bool budget_exhausted = false;
    size_t target_size = 0;

    std::vector<DesignInstance> instances(const QuadraticForm& q, const Rational& r, int t,
                                          const std::vector<Point>& pool) const {
        std::vector<DesignInstance> out;
        out.reserve(hits.size());
        for (const auto& subset : hits) {
            std::vector<Point> pts;
            pts.reserve(subset.size());
            for (size_t i : subset) pts.push_back(pool[i]);
            out.emplace_back(q, r, pts, t);
        }
        return out;
    }
};

namespace detail {

/*
 * Depth-first walk over index-increasing subsets of the pool, maintaining the
 * degree-k pair sums incrementally. A branch dies when some partial sum
 * cannot be pulled back to zero by the points still to be added: with q
 * points missing, |S| already chosen, and M_k a bound on |G_k| over all pool
 * pairs, the remaining contribution is at most
 *
 *     q * G_k(1) + 2 q |S| M_k + q (q - 1) M_k
 *
 * (diagonals, cross terms against the chosen set, and pairs among the new
 * points). The bound is precomputed from the pool, so pruning never consults
 * anything outside exact arithmetic.
 */
class SubsetSearch {
public:
    SubsetSearch(const std::vector<Point>& pool, int t, size_t target,
                 const std::vector<std::vector<Rational>>& pair_values,
                 const std::vector<Rational>& max_abs)
        : pool_size_(pool.size()), t_(t), target_(target), pair_values_(pair_values),
          max_abs_(max_abs) {}

    struct Result {
        std::vector<std::vector<size_t>> hits;
        std::uint64_t nodes = 0;
        std::uint64_t pruned = 0;
        bool exhausted = false;
    };

    // Walks subtrees rooted at first element `root`. `budget` is shared.
    // State is read-only after construction, so concurrent calls are safe.
    Result run_from_roots(const std::vector<size_t>& roots, std::atomic<std::int64_t>& budget) const {
        Result res;
        std::vector<size_t> chosen;
        std::vector<Rational> sums(static_cast<size_t>(t_) + 1, Rational(0));
        for (size_t root : roots) {
            if (budget_spent(budget)) { res.exhausted = true; break; }
            ++res.nodes;
            push(chosen, sums, root);
            descend(chosen, sums, res, budget);
            pop(chosen, sums, root);
        }
        return res;
    }

private:
    static bool budget_spent(std::atomic<std::int64_t>& budget) {
        // Signed so concurrent overshoot drifts negative instead of wrapping;
        // exhaustion is advisory under workers > 1.
        return budget.fetch_sub(1, std::memory_order_relaxed) <= 0;
    }

    void push(std::vector<size_t>& chosen, std::vector<Rational>& sums, size_t idx) const {
        for (int k = 1; k <= t_; ++k) {
            Rational delta(1); // diagonal term G_k(1)
            for (size_t j : chosen) {
                const Rational& v = pair_values_[static_cast<size_t>(k)][idx * pool_size_ + j];
                delta += v + v;
            }
            sums[static_cast<size_t>(k)] += delta;
        }
        chosen.push_back(idx);
    }

    void pop(std::vector<size_t>& chosen, std::vector<Rational>& sums, size_t idx) const {
        chosen.pop_back();
        for (int k = 1; k <= t_; ++k) {
            Rational delta(1);
            for (size_t j : chosen) {
                const Rational& v = pair_values_[static_cast<size_t>(k)][idx * pool_size_ + j];
                delta += v + v;
            }
            sums[static_cast<size_t>(k)] -= delta;
        }
    }

    bool prunable(const std::vector<size_t>& chosen, const std::vector<Rational>& sums) const {
        const Rational remaining(static_cast<long>(target_ - chosen.size()));
        const Rational have(static_cast<long>(chosen.size()));
        for (int k = 1; k <= t_; ++k) {
            const Rational& mk = max_abs_[static_cast<size_t>(k)];
            Rational reach = remaining // future diagonals
                           + (Rational(2) * remaining * have + remaining * (remaining - Rational(1))) * mk;
            if (sums[static_cast<size_t>(k)].abs() > reach) return true;
        }
        return false;
    }

    void descend(std::vector<size_t>& chosen, std::vector<Rational>& sums, Result& res,
                 std::atomic<std::int64_t>& budget) const {
        if (chosen.size() == target_) {
            bool all_zero = true;
            for (int k = 1; k <= t_; ++k)
                if (!sums[static_cast<size_t>(k)].is_zero()) { all_zero = false; break; }
            if (all_zero) res.hits.push_back(chosen);
            return;
        }
        if (prunable(chosen, sums)) {
            ++res.pruned;
            return;
        }
        const size_t missing = target_ - chosen.size();
        for (size_t next = chosen.back() + 1; next + missing <= pool_size_; ++next) {
            if (budget_spent(budget)) { res.exhausted = true; return; }
            ++res.nodes;
            push(chosen, sums, next);
            descend(chosen, sums, res, budget);
            pop(chosen, sums, next);
        }
    }

    size_t pool_size_;
    int t_;
    size_t target_;
    const std::vector<std::vector<Rational>>& pair_values_;
    const std::vector<Rational>& max_abs_;
};

} // namespace detail

/*
 * Exhaustive (within budget) search for subsets of the pool of exactly the
 * tight size that pass the strength-t pair-sum test. Finding nothing is a
 * normal outcome; the report says how hard the search tried. With
 * workers > 1 the top-level subtrees are fanned out round-robin and the
 * budget becomes a shared advisory counter.
 */
inline SearchReport search_tight_designs(const QuadraticForm& q, const Rational& r, int t,
                                         const std::vector<Point>& pool,
                                         const SearchOptions& opts = {}) {
    if (t < 1) throw PreconditionError("search_tight_designs: need t >= 1");
    if (r.sign() <= 0) throw PreconditionError("search_tight_designs: radius must be positive");
    if (q.dim() < 2) throw PreconditionError("search_tight_designs: need dimension >= 2");
    for (size_t i = 0; i < pool.size(); ++i)
        if (q.evaluate(pool[i]) != r)
            throw PreconditionError("search_tight_designs: pool point " + std::to_string(i) +
                                    " is off the quadric");

    SearchReport report;
    const mpz_class tight = tight_size(q.dim(), t);
    if (!tight.fits_ulong_p())
        throw PreconditionError("search_tight_designs: tight size out of range");
    report.target_size = static_cast<size_t>(tight.get_ui());

    if (report.target_size > pool.size()) return report; // no subset can reach the size
    if (opts.node_budget == 0) {
        report.budget_exhausted = true;
        return report;
    }

    // Pair values G_k(cos_ij) for the whole pool, plus per-degree max |G_k|.
    const size_t n = pool.size();
    const GegenbauerTable table(q.dim(), t);
    const Rational rinv = r.reciprocal();
    std::vector<std::vector<Rational>> pair_values(static_cast<size_t>(t) + 1);
    std::vector<Rational> max_abs(static_cast<size_t>(t) + 1, Rational(0));
    std::vector<Rational> cosines(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            Rational c = q.pair(pool[i], pool[j]) * rinv;
            cosines[i * n + j] = c;
            cosines[j * n + i] = std::move(c);
        }
    for (int k = 1; k <= t; ++k) {
        auto& vk = pair_values[static_cast<size_t>(k)];
        vk.resize(n * n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i; j < n; ++j) {
                Rational v = table.evaluate(k, cosines[i * n + j]);
                if (i != j && v.abs() > max_abs[static_cast<size_t>(k)])
                    max_abs[static_cast<size_t>(k)] = v.abs();
                vk[j * n + i] = v;
                vk[i * n + j] = std::move(v);
            }
    }

    detail::SubsetSearch search(pool, t, report.target_size, pair_values, max_abs);
    const std::int64_t initial =
        opts.node_budget > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())
            ? std::numeric_limits<std::int64_t>::max()
            : static_cast<std::int64_t>(opts.node_budget);
    std::atomic<std::int64_t> budget(initial);

    const size_t last_root = n - report.target_size; // later roots can't fill the subset
    std::vector<std::vector<size_t>> root_sets;
    const int workers = std::max(1, opts.workers);
    root_sets.resize(static_cast<size_t>(workers));
    for (size_t root = 0; root <= last_root; ++root)
        root_sets[root % static_cast<size_t>(workers)].push_back(root);

    std::vector<detail::SubsetSearch::Result> results(static_cast<size_t>(workers));
    if (workers == 1) {
        results[0] = search.run_from_roots(root_sets[0], budget);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w)
            threads.emplace_back([&, w] { results[static_cast<size_t>(w)] =
                                              search.run_from_roots(root_sets[static_cast<size_t>(w)], budget); });
        for (auto& th : threads) th.join();
    }

    for (auto& res : results) {
        for (auto& h : res.hits) report.hits.push_back(std::move(h));
        report.nodes_visited += res.nodes;
        report.pruned_branches += res.pruned;
        report.budget_exhausted = report.budget_exhausted || res.exhausted;
    }
    std::sort(report.hits.begin(), report.hits.end());
    return report;
}

} // namespace pteq
