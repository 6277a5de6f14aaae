#include "lacuna/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "lacuna/errors.hpp"

namespace lacuna {
namespace {

constexpr double kPi = std::numbers::pi;
// certificate used when pinning graph components to vanish at 0; rides along
// in every order-0 evaluation error afterwards
constexpr double kOffsetEps = 1e-12;
// how far past |sin| = 1 a partial-recovery branch may reach before pruning
constexpr double kSineSlack = 1e-7;

double wrap_angle(double th) {
    if (th < 0.0) th += 2.0 * kPi;
    if (th >= 2.0 * kPi) th -= 2.0 * kPi;
    return th;
}

}  // namespace

TorusMap::TorusMap(std::vector<double> radii) : a_(std::move(radii)) {
    if (a_.empty()) throw ConfigError("torus: need at least one radius");
    double prefix = 0.0;
    gap_ = a_[0];
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (!std::isfinite(a_[i]) || a_[i] <= 0.0)
            throw ConfigError("torus: radius " + std::to_string(i + 1) + " must be positive");
        if (i > 0 && prefix >= a_[i])
            throw ConfigError("torus: radii must be super-increasing (a_1+...+a_" +
                              std::to_string(i) + " >= a_" + std::to_string(i + 1) + ")");
        if (i > 0) gap_ = std::min(gap_, a_[i] - prefix);
        prefix += a_[i];
    }
    sum_ = prefix;
}

std::vector<double> TorusMap::eval(const std::vector<double>& thetas) const {
    const std::size_t k = a_.size();
    if (thetas.size() != k) throw ConfigError("torus: expected " + std::to_string(k) + " angles");
    std::vector<double> out(k + 1);
    double carry = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        double rho = carry + a_[j];
        out[j] = rho * std::sin(thetas[j]);
        carry = rho * std::cos(thetas[j]);
    }
    out[k] = carry;
    return out;
}

Eigen::MatrixXd TorusMap::jacobian(const std::vector<double>& thetas) const {
    const std::size_t k = a_.size();
    if (thetas.size() != k) throw ConfigError("torus: expected " + std::to_string(k) + " angles");
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k + 1),
                                                static_cast<Eigen::Index>(k));
    double carry = 0.0;
    Eigen::VectorXd dcarry = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < k; ++j) {
        double s = std::sin(thetas[j]), c = std::cos(thetas[j]);
        double rho = carry + a_[j];
        for (std::size_t i = 0; i < j; ++i)
            jac(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
                dcarry(static_cast<Eigen::Index>(i)) * s;
        jac(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = rho * c;
        for (std::size_t i = 0; i < j; ++i)
            dcarry(static_cast<Eigen::Index>(i)) *= c;
        dcarry(static_cast<Eigen::Index>(j)) = -rho * s;
        carry = rho * c;
    }
    jac.row(static_cast<Eigen::Index>(k)) = dcarry.transpose();
    return jac;
}

std::vector<double> TorusMap::recover(const std::vector<double>& point, double tol) const {
    const std::size_t k = a_.size();
    if (point.size() != k + 1)
        throw ConfigError("torus: expected a point with " + std::to_string(k + 1) + " coordinates");
    std::vector<double> thetas(k);
    double carry = point[k];
    for (std::size_t jj = k; jj-- > 0;) {
        double rho = std::hypot(point[jj], carry);
        thetas[jj] = wrap_angle(std::atan2(point[jj], carry));
        carry = rho - a_[jj];
    }
    if (std::fabs(carry) > tol * (1.0 + sum_))
        throw NumericError("torus: point is not on the chain image (carry residual " +
                           std::to_string(carry) + ")");
    return thetas;
}

std::vector<TorusMap::Branch> TorusMap::recover_partial(const std::vector<double>& first) const {
    const std::size_t k = a_.size();
    if (first.size() != k)
        throw ConfigError("torus: partial recovery needs the first " + std::to_string(k) +
                          " coordinates");
    struct State {
        std::vector<double> thetas;
        double carry;
    };
    std::vector<State> states{{{}, 0.0}};
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<State> next;
        for (const State& st : states) {
            double rho = st.carry + a_[j];  // > 0 by the super-increasing condition
            double s = first[j] / rho;
            if (std::fabs(s) > 1.0 + kSineSlack) continue;
            s = std::clamp(s, -1.0, 1.0);
            double c = std::sqrt(std::max(0.0, 1.0 - s * s));
            for (int sign = 0; sign < 2; ++sign) {
                if (sign == 1 && c < 1e-12) break;  // both cosine signs coincide
                double cs = (sign == 0) ? c : -c;
                State ns = st;
                ns.thetas.push_back(wrap_angle(std::atan2(s, cs)));
                ns.carry = rho * cs;
                next.push_back(std::move(ns));
            }
        }
        states = std::move(next);
    }
    std::vector<Branch> out;
    out.reserve(states.size());
    for (State& st : states) out.push_back({std::move(st.thetas), st.carry});
    return out;
}

InjectivityReport torus_injectivity_scan(const TorusMap& torus, std::size_t grid_per_axis) {
    const std::size_t k = torus.arity();
    if (grid_per_axis < 4) throw ConfigError("injectivity scan: grid must be >= 4 per axis");
    if (k > 4) throw ConfigError("injectivity scan: arity capped at 4 (combinatorial)");
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= grid_per_axis;

    const std::size_t dim = k + 1;
    std::vector<double> pts(total * dim);
    std::vector<double> thetas(k);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t i = 0; i < k; ++i) {
            thetas[i] = 2.0 * kPi * static_cast<double>(rest % grid_per_axis) /
                        static_cast<double>(grid_per_axis);
            rest /= grid_per_axis;
        }
        auto p = torus.eval(thetas);
        std::copy(p.begin(), p.end(), pts.begin() + static_cast<std::ptrdiff_t>(idx * dim));
    }

    // sort by the first coordinate so the inner scan can stop once the x-gap
    // alone already exceeds every distance still of interest
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return pts[l * dim] < pts[r * dim]; });

    InjectivityReport rep;
    rep.grid_per_axis = grid_per_axis;
    rep.points = total;
    // half the smallest adjacent-step chord on the tightest stage circle: the
    // grid can realize that chord exactly, so leave a factor-two margin
    rep.threshold = torus.min_stage_gap() * std::sin(kPi / static_cast<double>(grid_per_axis));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t ii = 0; ii < total; ++ii) {
        const double* p = &pts[order[ii] * dim];
        for (std::size_t jj = ii + 1; jj < total; ++jj) {
            const double* q = &pts[order[jj] * dim];
            double dx = q[0] - p[0];
            if (dx * dx > best && dx > rep.threshold) break;
            double d2 = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                double d = q[c] - p[c];
                d2 += d * d;
            }
            best = std::min(best, d2);
            if (d2 < rep.threshold * rep.threshold) ++rep.collisions;
        }
    }
    rep.min_image_gap = std::sqrt(best);
    return rep;
}

Hypersurface::Hypersurface(std::vector<LacunarySeries> components) : f_(std::move(components)) {
    if (f_.empty()) throw ConfigError("hypersurface: need at least one graph component");
}

CertifiedValue Hypersurface::defining(std::span<const double> x, double eps) const {
    if (x.size() != dimension())
        throw ConfigError("hypersurface: expected a point in dimension " +
                          std::to_string(dimension()));
    CertifiedValue h = height(x.first(f_.size()), eps);
    return {x[f_.size()] - h.value, h.error};
}

CertifiedValue Hypersurface::height(std::span<const double> x_first, double eps) const {
    if (x_first.size() != f_.size())
        throw ConfigError("hypersurface: height takes the first " + std::to_string(f_.size()) +
                          " coordinates");
    double v = 0.0, err = 0.0;
    double slice = eps / static_cast<double>(f_.size());
    for (std::size_t j = 0; j < f_.size(); ++j) {
        CertifiedValue cv = f_[j].evaluate(x_first[j], 0, slice);
        v += cv.value;
        err += cv.error;
    }
    return {v, err};
}

Hypersurface standard_hypersurface(std::size_t m, int start, double scale) {
    if (m < 2 || m > 32) throw ConfigError("hypersurface: dimension must be in 2..32");
    std::vector<LacunarySeries> comps;
    comps.reserve(m - 1);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        int order = static_cast<int>(j % 3) + 1;
        comps.emplace_back(WeightSequence::iterated_log_family(order), start, scale);
    }
    return Hypersurface(std::move(comps));
}

HypersurfaceEvaluator::HypersurfaceEvaluator(const Hypersurface& h, double eps) : h_(&h) {
    double slice = eps / static_cast<double>(h.component_count());
    evs_.reserve(h.component_count());
    for (std::size_t j = 0; j < h.component_count(); ++j) {
        evs_.emplace_back(h.component(j), 0, slice);
        err_ += evs_.back().point_error();
    }
}

double HypersurfaceEvaluator::defining(std::span<const double> x) const {
    if (x.size() != h_->dimension())
        throw ConfigError("hypersurface: expected a point in dimension " +
                          std::to_string(h_->dimension()));
    double sum = 0.0;
    for (std::size_t j = 0; j < evs_.size(); ++j) sum += evs_[j].eval_point(x[j]);
    return x[evs_.size()] - sum;
}

void HypersurfaceEvaluator::component_values(std::size_t j, std::span<const double> xs,
                                             std::span<double> out) const {
    if (j >= evs_.size()) throw ConfigError("hypersurface: component index out of range");
    evs_[j].eval_points(xs, out);
}

CertifiedValue GraphComponent::eval(double x, int j, double eps) const {
    CertifiedValue cv = series.evaluate(x, j, eps);
    double v = cv.value;
    double err = cv.error;
    if (j == 0) {
        v -= offset;
        err += kOffsetEps;
    }
    if (add_sin) v += std::sin(x + 0.5 * kPi * static_cast<double>(j));
    return {v, err};
}

GraphComponentEvaluator::GraphComponentEvaluator(const GraphComponent& c, int j, double eps)
    : c_(&c), ev_(c.series, j, eps), j_(j) {}

double GraphComponentEvaluator::eval_point(double x) const {
    double v = ev_.eval_point(x);
    if (j_ == 0) v -= c_->offset;
    if (c_->add_sin) v += std::sin(x + 0.5 * kPi * static_cast<double>(j_));
    return v;
}

void GraphComponentEvaluator::eval_points(std::span<const double> xs, std::span<double> out) const {
    ev_.eval_points(xs, out);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (j_ == 0) out[i] -= c_->offset;
        if (c_->add_sin) out[i] += std::sin(xs[i] + 0.5 * kPi * static_cast<double>(j_));
    }
}

const char* variant_name(ManifoldVariant v) {
    switch (v) {
        case ManifoldVariant::torus_perturbed: return "torus_perturbed";
        case ManifoldVariant::torus_explicit: return "torus_explicit";
        case ManifoldVariant::convex_graph: return "convex_graph";
    }
    return "?";
}

namespace {

// default sphere radius: with every |chain coordinate| <= A and the series sum
// bounded by B, the 2n-1 coordinates before y_n satisfy
// sum coords^2 <= (2n-1)(A+B)^2, so r = 2 sqrt(2n-1) (A+B) leaves the radicand
// at or above (3/4) r^2
double resolve_radius(std::size_t n, double bound_ab, std::optional<double> radius) {
    double floor_r = std::sqrt(static_cast<double>(2 * n - 1)) * bound_ab;
    if (!radius) return 2.0 * floor_r;
    if (!std::isfinite(*radius) || *radius <= floor_r)
        throw ConfigError("embedding: radius must exceed sqrt(2n-1) * (radius sum + series sup), > " +
                          std::to_string(floor_r));
    return *radius;
}

double certified_sup(const LacunarySeries& s, int j) {
    double lg = s.log_derivative_sup(j);
    if (lg == std::numeric_limits<double>::infinity())
        throw NumericError("embedding: series sup-derivative bound cannot be certified");
    return std::exp(lg);
}

}  // namespace

Embedding Embedding::perturbed_torus(std::size_t n, TorusMap torus,
                                     std::vector<LacunarySeries> series,
                                     std::optional<double> radius) {
    if (n < 2) throw ConfigError("embedding: complex dimension must be >= 2");
    const std::size_t k = 2 * n - 2;
    if (torus.arity() != k)
        throw ConfigError("embedding: torus must have " + std::to_string(k) + " angles");
    if (series.size() != k)
        throw ConfigError("embedding: expected " + std::to_string(k) + " perturbation series");

    const double a1 = torus.radii()[0];
    const double budget = 0.1 * a1 / static_cast<double>(k);
    std::vector<LacunarySeries> scaled;
    scaled.reserve(k);
    double sup_sum = 0.0;
    for (const LacunarySeries& s : series) {
        double rel = s.scale();
        if (std::fabs(rel) > 1.0)
            throw ConfigError("embedding: perturbation scales are relative knobs in [-1, 1]");
        double abs_scale = 0.0;
        if (rel != 0.0) {
            LacunarySeries unit(s.sequence(), s.start(), 1.0);
            abs_scale = rel * budget / certified_sup(unit, 1);
        }
        scaled.emplace_back(s.sequence(), s.start(), abs_scale);
        if (abs_scale != 0.0) sup_sum += certified_sup(scaled.back(), 0);
    }

    Embedding e;
    e.variant_ = ManifoldVariant::torus_perturbed;
    e.n_ = n;
    e.r_ = resolve_radius(n, torus.radius_sum() + sup_sum, radius);
    e.torus_ = std::move(torus);
    e.f_ = std::move(scaled);
    return e;
}

Embedding Embedding::explicit_torus(std::size_t n, TorusMap torus, std::optional<double> radius) {
    if (n < 2) throw ConfigError("embedding: complex dimension must be >= 2");
    if (torus.arity() != 2 * n - 2)
        throw ConfigError("embedding: torus must have " + std::to_string(2 * n - 2) + " angles");
    Embedding e;
    e.variant_ = ManifoldVariant::torus_explicit;
    e.n_ = n;
    e.r_ = resolve_radius(n, torus.radius_sum(), radius);
    e.torus_ = std::move(torus);
    return e;
}

Embedding Embedding::convex_graph(std::size_t n, std::vector<LacunarySeries> f,
                                  std::vector<LacunarySeries> g,
                                  std::vector<double> convex_coeffs) {
    if (n < 2) throw ConfigError("embedding: complex dimension must be >= 2");
    if (f.size() != n - 1 || g.size() != n - 1)
        throw ConfigError("embedding: graph variant needs " + std::to_string(n - 1) +
                          " f-series and as many g-series");
    if (convex_coeffs.empty()) convex_coeffs.assign(2 * n - 1, 1.0);
    if (convex_coeffs.size() != 2 * n - 1)
        throw ConfigError("embedding: expected " + std::to_string(2 * n - 1) +
                          " convex coefficients");
    for (double c : convex_coeffs)
        if (!std::isfinite(c) || c <= 0.0)
            throw ConfigError("embedding: convex coefficients must be positive");

    auto pin = [](LacunarySeries s, bool add_sin) {
        double off = s.evaluate(0.0, 0, kOffsetEps).value;
        return GraphComponent{std::move(s), off, add_sin};
    };
    Embedding e;
    e.variant_ = ManifoldVariant::convex_graph;
    e.n_ = n;
    e.gf_.reserve(n - 1);
    e.gg_.reserve(n - 1);
    for (std::size_t j = 0; j < n - 1; ++j) {
        // only the first f-component gets the sin correction: slope 1 at the
        // origin; every g-component keeps the pure-cosine slope 0 there
        e.gf_.push_back(pin(std::move(f[j]), j == 0));
        e.gg_.push_back(pin(std::move(g[j]), false));
    }
    e.cvx_ = std::move(convex_coeffs);
    return e;
}

const TorusMap& Embedding::torus() const {
    if (!torus_) throw ConfigError("embedding: the graph variant has no torus");
    return *torus_;
}

double Embedding::convex_height(std::span<const double> w) const {
    if (w.size() != cvx_.size())
        throw ConfigError("embedding: convex height takes " + std::to_string(cvx_.size()) +
                          " arguments");
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += cvx_[i] * w[i] * w[i];
    return s;
}

namespace {

// sum_{k=1}^{m} a_k cos th_k ... cos th_m, the coefficient sums of the literal
// closed-form surface (m = 0 gives 0); evaluated right-to-left
double product_sum(const std::vector<double>& a, const std::vector<double>& th, std::size_t m) {
    double prod = 1.0, s = 0.0;
    for (std::size_t k = m; k-- > 0;) {
        prod *= std::cos(th[k]);
        s += a[k] * prod;
    }
    return s;
}

double sphere_last(double r, const std::vector<double>& out, std::size_t upto) {
    double q = r * r;
    for (std::size_t c = 0; c < upto; ++c) q -= out[c] * out[c];
    if (q < 0.0)
        throw NumericError("embedding: sphere radicand went negative (radius too small)");
    return std::sqrt(q);
}

}  // namespace

std::vector<double> Embedding::eval(const std::vector<double>& params, double eps) const {
    if (params.size() != param_dim())
        throw ConfigError("embedding: expected " + std::to_string(param_dim()) + " parameters");
    const std::size_t k = param_dim();
    std::vector<double> out(ambient_dim());

    if (variant_ == ManifoldVariant::convex_graph) {
        std::copy(params.begin(), params.end(), out.begin());
        double xn = 0.0;
        double slice = eps / static_cast<double>(2 * (n_ - 1));
        for (std::size_t j = 0; j + 1 < n_; ++j) {
            xn += gf_[j].eval(params[2 * j], 0, slice).value;
            xn += gg_[j].eval(params[2 * j + 1], 0, slice).value;
        }
        out[2 * n_ - 2] = xn;
        std::vector<double> w(params.begin(), params.end());
        w.push_back(xn);
        out[2 * n_ - 1] = convex_height(w);
        return out;
    }

    if (variant_ == ManifoldVariant::torus_explicit) {
        // the literal product-sum formulas, kept independent of the chain
        // recursion so the two readings of the surface cross-check each other
        const std::vector<double>& a = torus_->radii();
        for (std::size_t j = 1; j < n_; ++j) {
            out[2 * j - 2] = (product_sum(a, params, 2 * j - 2) + a[2 * j - 2]) *
                             std::sin(params[2 * j - 2]);
            out[2 * j - 1] =
                (product_sum(a, params, 2 * j - 1) + a[2 * j - 1]) * std::sin(params[2 * j - 1]);
        }
        out[2 * n_ - 2] =
            (product_sum(a, params, 2 * n_ - 3) + a[2 * n_ - 3]) * std::cos(params[2 * n_ - 3]);
        out[2 * n_ - 1] = sphere_last(r_, out, 2 * n_ - 1);
        return out;
    }

    std::vector<double> chain = torus_->eval(params);
    std::copy(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(k), out.begin());
    double xn = chain[k];
    double slice = eps / static_cast<double>(k);
    for (std::size_t j = 0; j < k; ++j) xn += f_[j].evaluate(params[j], 0, slice).value;
    out[2 * n_ - 2] = xn;
    out[2 * n_ - 1] = sphere_last(r_, out, 2 * n_ - 1);
    return out;
}

Eigen::MatrixXd Embedding::jacobian(const std::vector<double>& params, double eps) const {
    if (params.size() != param_dim())
        throw ConfigError("embedding: expected " + std::to_string(param_dim()) + " parameters");
    const std::size_t k = param_dim();
    const std::size_t amb = ambient_dim();
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k),
                                                static_cast<Eigen::Index>(amb));
    std::vector<double> pt = eval(params, eps);

    if (variant_ == ManifoldVariant::convex_graph) {
        double slice = eps / static_cast<double>(2 * (n_ - 1));
        std::vector<double> dxn(k);
        for (std::size_t j = 0; j + 1 < n_; ++j) {
            dxn[2 * j] = gf_[j].eval(params[2 * j], 1, slice).value;
            dxn[2 * j + 1] = gg_[j].eval(params[2 * j + 1], 1, slice).value;
        }
        const double xn = pt[2 * n_ - 2];
        const double cxn = cvx_[2 * n_ - 2];
        for (std::size_t i = 0; i < k; ++i) {
            jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
            jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(2 * n_ - 2)) = dxn[i];
            jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(2 * n_ - 1)) =
                2.0 * cvx_[i] * params[i] + 2.0 * cxn * xn * dxn[i];
        }
        return jac;
    }

    Eigen::MatrixXd chain_jac = torus_->jacobian(params);  // (k+1) x k
    const double yn = pt[2 * n_ - 1];
    if (yn < 1e-12 * r_)
        throw NumericError("embedding: tangent undefined at the sphere coordinate singularity");
    double slice = eps / static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t c = 0; c < k; ++c)
            jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                chain_jac(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(i));
        double dxn = chain_jac(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
        if (variant_ == ManifoldVariant::torus_perturbed)
            dxn += f_[i].evaluate(params[i], 1, slice).value;
        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(2 * n_ - 2)) = dxn;
        double acc = 0.0;
        for (std::size_t c = 0; c + 1 < amb; ++c)
            acc += pt[c] * jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(2 * n_ - 1)) = -acc / yn;
    }
    return jac;
}

Restriction generating_slice(const Embedding& e) {
    const std::size_t n = e.complex_dim();
    const std::size_t k = e.param_dim();
    Restriction r;
    r.params.assign(k, 0.0);
    if (e.variant() == ManifoldVariant::convex_graph) {
        // keep x_1, y_1 and the remaining x_j; pin y_2 .. y_{n-1} to 0
        for (std::size_t i = 0; i < k; ++i)
            if (i < 2 || i % 2 == 0) r.free_indices.push_back(i);
    } else {
        // pin the odd angles th_1, th_3, ..., th_{2n-5}; base point sends the
        // last angle to pi/2, the ambient point (0, ..., 0, a, 0, b)
        r.params[k - 1] = 0.5 * kPi;
        for (std::size_t i = 0; i < k; ++i)
            if (i % 2 == 1 || i + 2 >= k) r.free_indices.push_back(i);
    }
    if (r.free_indices.size() != n)
        throw NumericError("generating slice: expected an n-dimensional slice");
    return r;
}

Eigen::MatrixXd tangent_basis(const Embedding& e, const std::vector<double>& params, double eps) {
    return e.jacobian(params, eps);
}

Eigen::MatrixXd restricted_tangent(const Embedding& e, const Restriction& r, double eps) {
    Eigen::MatrixXd full = e.jacobian(r.params, eps);
    Eigen::MatrixXd out(static_cast<Eigen::Index>(r.free_indices.size()), full.cols());
    for (std::size_t i = 0; i < r.free_indices.size(); ++i) {
        if (r.free_indices[i] >= static_cast<std::size_t>(full.rows()))
            throw ConfigError("restriction: free index out of range");
        out.row(static_cast<Eigen::Index>(i)) =
            full.row(static_cast<Eigen::Index>(r.free_indices[i]));
    }
    return out;
}

GeneratingReport generating_check(const Eigen::MatrixXd& basis) {
    const Eigen::Index amb = basis.cols();
    if (amb % 2 != 0) throw ConfigError("generating check: ambient dimension must be even");
    if (basis.rows() * 2 != amb)
        throw ConfigError("generating check: expected n rows in ambient dimension 2n");
    Eigen::MatrixXd stack(amb, amb);
    stack.topRows(basis.rows()) = basis;
    for (Eigen::Index r = 0; r < basis.rows(); ++r)
        for (Eigen::Index j = 0; 2 * j < amb; ++j) {
            stack(basis.rows() + r, 2 * j) = -basis(r, 2 * j + 1);
            stack(basis.rows() + r, 2 * j + 1) = basis(r, 2 * j);
        }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stack);
    GeneratingReport rep;
    rep.rank = static_cast<int>(qr.rank());
    rep.generating = rep.rank == static_cast<int>(amb);
    return rep;
}

}  // namespace lacuna
