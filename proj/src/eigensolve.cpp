#include "glnm/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "glnm/derivative.hpp"
#include "glnm/error.hpp"
#include "sweep_core.hpp"

namespace glnm {

namespace {

int count_negative_range(const std::vector<double>& ratio, const std::vector<bool>& pole,
                         std::size_t lo, std::size_t hi, bool ascending)
{
    if (lo > hi)
        return 0;
    int count = 0;
    bool prev_pole = false;
    auto visit = [&](std::size_t i) {
        if (pole[i]) {
            ++count;
            prev_pole = true;
            return;
        }
        if (!prev_pole && ratio[i] < 0)
            ++count;
        prev_pole = false;
    };
    if (ascending) {
        for (std::size_t i = lo; i <= hi; ++i)
            visit(i);
    } else {
        for (std::size_t i = hi; i + 1 > lo; --i)
            visit(i);
    }
    return count;
}

// Everything one trial-energy evaluation needs, with the g-only stencil
// parts computed once per solve.
class Workspace {
public:
    explicit Workspace(const EigenProblem& p)
        : p_(p), grid_(*p.grid), n_(grid_.size())
    {
        if (p.m.size() != n_ || p.m_prime.size() != n_ || p.V.size() != n_)
            throw validation_error("eigenproblem arrays do not match the grid length");
        if (!(p.e_lo < p.e_hi))
            throw validation_error("energy window is empty");
        if (p.target_nodes < 0)
            throw validation_error("target node count must be non-negative");

        fields_.grid = p.grid;
        fields_.g.resize(n_);
        fields_.f.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (!(p.m[i] > 0))
                throw validation_error("effective mass must be strictly positive (node " +
                                       std::to_string(i) + ")");
            fields_.g[i] = -p.m_prime[i] / p.m[i];
        }
        cache_.emplace(grid_, fields_.g);
        origin_seed_ = p.boundary.origin_ratio(grid_);
        floor_ = 2;
        if (!grid_.junctions().empty())
            floor_ = std::max(floor_, grid_.junctions().back() + 1);
        weight_.resize(n_, 1.0);
        if (p.weight)
            for (std::size_t i = 0; i < n_; ++i)
                weight_[i] = p.weight(grid_.node(i));
    }

    void set_energy(double e)
    {
        for (std::size_t i = 0; i < n_; ++i)
            fields_.f[i] = 2.0 * p_.m[i] * (e - p_.V[i]);
    }

    StencilCache::Weights weights_at(std::size_t center) const
    {
        const Grid::Triple t = grid_.triple_at(center);
        return StencilCache::combine(cache_->row(center), fields_.f[t.minus], fields_.f[center],
                                     fields_.f[t.plus]);
    }

    MismatchResult eval(double e)
    {
        set_energy(e);
        std::size_t m = choose_matching_point(fields_);
        m = std::clamp(m, floor_, n_ - 2);

        auto weights = [this](std::size_t c) { return weights_at(c); };
        detail::run_sweep_outward(grid_, weights, origin_seed_, m, out_ratio_, out_pole_);
        in_stop_ = std::max(m >= 5 ? m - 5 : floor_, floor_);
        detail::run_sweep_inward(grid_, weights, p_.boundary.tail_ratio(fields_), in_stop_,
                                 in_ratio_, in_pole_);

        int shifts = 0;
        while ((out_pole_[m] || in_pole_[m + 1]) && shifts < 5 && m > floor_) {
            --m;
            ++shifts;
        }
        if (out_pole_[m] || in_pole_[m + 1])
            throw solver_error("matching-point pole persists after 5 shifts");

        MismatchResult r;
        r.match_index = m;
        r.residual = out_ratio_[m] * in_ratio_[m + 1] - 1.0;
        r.nodes = count_negative_range(out_ratio_, out_pole_, 0, m, true) +
                  count_negative_range(in_ratio_, in_pole_, m + 2, n_ - 1, false);
        return r;
    }

    const FieldSamples& fields() const { return fields_; }
    const std::vector<double>& weight() const { return weight_; }
    const std::vector<double>& out_ratio() const { return out_ratio_; }
    const std::vector<bool>& out_pole() const { return out_pole_; }
    const std::vector<double>& in_ratio() const { return in_ratio_; }
    const std::vector<bool>& in_pole() const { return in_pole_; }

private:
    const EigenProblem& p_;
    const Grid& grid_;
    std::size_t n_;
    FieldSamples fields_;
    std::optional<StencilCache> cache_;
    std::vector<double> weight_;
    double origin_seed_ = 0;
    std::size_t floor_ = 2;
    std::vector<double> out_ratio_, in_ratio_;
    std::vector<bool> out_pole_, in_pole_;
    std::size_t in_stop_ = 0;
};

} // namespace

std::size_t choose_matching_point(const FieldSamples& fields)
{
    const std::size_t n = fields.grid->size();
    if (n < 5)
        throw validation_error("grid shorter than 5 nodes has no matching point");
    const std::vector<double>& f = fields.f;
    for (std::size_t i = n - 1; i-- > 0;) {
        if (f[i] >= 0 && f[i + 1] < 0)
            return i;
    }
    const bool all_negative = std::all_of(f.begin(), f.end(), [](double v) { return v < 0; });
    return all_negative ? n / 2 : (3 * n) / 4;
}

MismatchResult mismatch(const EigenProblem& problem, double e)
{
    if (!(e >= problem.e_lo && e <= problem.e_hi))
        throw validation_error("trial energy outside the energy window");
    Workspace ws(problem);
    return ws.eval(e);
}

double composite_simpson(const Grid& grid, std::span<const double> values)
{
    if (values.size() != grid.size())
        throw validation_error("integrand samples do not match the grid length");
    double total = 0.0;
    for (std::size_t s = 0; s < grid.segment_count(); ++s) {
        const std::size_t first = grid.segment_first(s);
        const std::size_t last = grid.segment_last(s);
        const std::size_t nints = last - first;
        const double h = grid.spec().segments[s].step;
        const std::size_t even = nints % 2 == 0 ? nints : nints - 1;
        if (even >= 2) {
            double sum = values[first] + values[first + even];
            for (std::size_t k = 1; k < even; k += 2)
                sum += 4.0 * values[first + k];
            for (std::size_t k = 2; k < even; k += 2)
                sum += 2.0 * values[first + k];
            total += sum * h / 3.0;
        }
        if (even < nints)
            total += 0.5 * h * (values[last - 1] + values[last]);
    }
    return total;
}

EigenSolution solve(const EigenProblem& problem)
{
    Workspace ws(problem);
    const int k = problem.target_nodes;
    const double lo = problem.e_lo;
    const double hi = problem.e_hi;
    int evals = 0;
    auto eval = [&](double e) {
        ++evals;
        return ws.eval(e);
    };

    const MismatchResult rlo = eval(lo);
    const MismatchResult rhi = eval(hi);
    if (rlo.nodes > k)
        throw solver_error("energy window exhausted: " + std::to_string(rlo.nodes) +
                           " nodes already at the window's low end (target " + std::to_string(k) + ")");
    if (rhi.nodes < k)
        throw solver_error("energy window exhausted: only " + std::to_string(rhi.nodes) +
                           " nodes at the window's high end (target " + std::to_string(k) + ")");

    // Boundaries of the correct-node-count region, bisected to machine width.
    double e_up = hi;
    double boundary_k_side = hi; // highest energy seen with count == k, if any
    bool have_upper_boundary = false;
    if (rhi.nodes >= k + 1) {
        double a = lo, b = hi;
        while (true) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b)
                break;
            if (eval(mid).nodes >= k + 1)
                b = mid;
            else
                a = mid;
        }
        e_up = a;
        boundary_k_side = a;
        have_upper_boundary = true;
    }
    double e_dn = lo;
    if (rlo.nodes <= k - 1) {
        double a = lo, b = hi;
        while (true) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b)
                break;
            if (eval(mid).nodes <= k - 1)
                a = mid;
            else
                b = mid;
        }
        e_dn = b;
    }
    if (!(e_dn <= e_up))
        throw solver_error("energy window has no region with the target node count");

    // Matching residual changes sign strictly inside the region; sample for
    // a bracket.
    constexpr int samples = 17;
    double prev_e = 0, prev_D = 0;
    bool have_prev = false;
    double ba = 0, bb = 0, bDa = 0, bDb = 0;
    bool bracketed = false;
    for (int i = 0; i < samples; ++i) {
        const double e = e_dn + (e_up - e_dn) * i / (samples - 1);
        const MismatchResult r = eval(e);
        if (r.nodes != k || std::abs(r.residual) > 1e8) {
            have_prev = false;
            continue;
        }
        if (have_prev && std::signbit(r.residual) != std::signbit(prev_D)) {
            ba = prev_e;
            bb = e;
            bDa = prev_D;
            bDb = r.residual;
            bracketed = true;
            break;
        }
        prev_e = e;
        prev_D = r.residual;
        have_prev = true;
    }

    double e_final;
    if (bracketed) {
        double a = ba, b = bb, Da = bDa, Db = bDb;
        double ep = a, Dp = Da, ec = b, Dc = Db;
        // once the residual criterion fires, one further secant step pins the
        // root itself (the residual scale shrinks with h, the step does not)
        bool residual_stop = false;
        while (true) {
            double cand = Dc != Dp ? ec - Dc * (ec - ep) / (Dc - Dp) : 0.5 * (a + b);
            if (!(cand > a && cand < b))
                cand = 0.5 * (a + b);
            if (cand == a || cand == b)
                break;
            const MismatchResult r = eval(cand);
            if (std::signbit(r.residual) == std::signbit(Da)) {
                a = cand;
                Da = r.residual;
            } else {
                b = cand;
                Db = r.residual;
            }
            const double step = std::abs(cand - ec);
            ep = ec;
            Dp = Dc;
            ec = cand;
            Dc = r.residual;
            if (residual_stop)
                break;
            if (std::abs(Dc) <= 1e-11) {
                residual_stop = true;
                continue;
            }
            if (step <= 1e-12 * std::max(1.0, std::abs(ec)) ||
                std::abs(b - a) <= 1e-12 * std::max(1.0, std::abs(ec)))
                break;
        }
        e_final = std::abs(Da) < std::abs(Db) ? a : b;
    } else if (have_upper_boundary) {
        // No sign change: the root can only sit at the machine-width count
        // boundary. Accept it if the residual is already small there.
        const MismatchResult r = eval(boundary_k_side);
        if (std::abs(r.residual) > 1e-8)
            throw solver_error("matching residual stagnates at " + std::to_string(r.residual) +
                               " with a machine-width bracket; the grid is likely inadequate");
        e_final = boundary_k_side;
    } else {
        throw solver_error("no matching-residual sign change inside the energy window");
    }

    // Final evaluation, reconstruction and normalization.
    const MismatchResult fin = ws.eval(e_final);
    ++evals;
    if (fin.nodes != k)
        throw solver_error("converged energy has " + std::to_string(fin.nodes) +
                           " nodes, expected " + std::to_string(k));
    const std::size_t m = fin.match_index;
    const std::size_t n = problem.grid->size();

    SolutionSamples sol;
    sol.y.assign(n, 0.0);
    sol.y[m] = 1.0;
    // outward part: y_i = Y_i y_{i+1} walking toward the origin
    for (std::size_t i = m; i-- > 0;)
        sol.y[i] = ws.out_ratio()[i] * sol.y[i + 1];
    for (std::size_t i = 0; i < m; ++i)
        if (ws.out_pole()[i])
            sol.y[i + 1] = 0.0;
    // inward part: y_i = Y_i y_{i-1} walking outward
    for (std::size_t i = m + 1; i < n; ++i)
        sol.y[i] = ws.in_ratio()[i] * sol.y[i - 1];
    for (std::size_t i = m + 1; i < n; ++i)
        if (ws.in_pole()[i])
            sol.y[i - 1] = 0.0;

    // normalize to unit weighted norm, Simpson per segment plus the analytic
    // exponential tail beyond the grid
    std::vector<double> integrand(n);
    for (std::size_t i = 0; i < n; ++i)
        integrand[i] = ws.weight()[i] * sol.y[i] * sol.y[i];
    double norm = composite_simpson(*problem.grid, integrand);
    if (std::holds_alternative<ExpDecayTail>(problem.boundary.tail)) {
        const double kappa = std::sqrt(std::max(-ws.fields().f.back(), 0.0));
        if (kappa > 0)
            norm += ws.weight().back() * sol.y.back() * sol.y.back() / (2.0 * kappa);
    }
    if (!(norm > 0) || !std::isfinite(norm))
        throw solver_error("normalization integral is not positive and finite");
    sol.norm = norm;
    const double scale = 1.0 / std::sqrt(norm);
    for (double& v : sol.y)
        v *= scale;

    // sign convention: positive at the first extremum of |y|
    std::size_t istar = 0;
    double best = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double ai = std::abs(sol.y[i]);
        if (ai >= std::abs(sol.y[i - 1]) && ai >= std::abs(sol.y[i + 1]) && ai > 0) {
            istar = i;
            break;
        }
        if (ai > best) {
            best = ai;
            istar = i;
        }
    }
    if (sol.y[istar] < 0)
        for (double& v : sol.y)
            v = -v;

    sol.y_prime = derivative_all(ws.fields(), sol);

    EigenSolution out;
    out.e = e_final;
    out.solution = std::move(sol);
    out.nodes = fin.nodes;
    out.match_residual = std::abs(fin.residual);
    out.iterations = evals;
    return out;
}

} // namespace glnm
