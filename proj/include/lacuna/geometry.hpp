#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lacuna/lacunary.hpp"

namespace lacuna {

// Chained circle map [0,2pi)^k -> R^{k+1}.  Stage j spins the running carry:
//   out_j = (C_{j-1} + a_j) sin th_j,   C_j = (C_{j-1} + a_j) cos th_j,  C_0 = 0,
// and the final carry C_k becomes the last coordinate.  The radii must grow
// super-increasingly (a_1 + ... + a_i < a_{i+1}), which keeps every stage
// radius positive and the map injective on one period.
class TorusMap {
  public:
    explicit TorusMap(std::vector<double> radii);

    std::size_t arity() const { return a_.size(); }
    const std::vector<double>& radii() const { return a_; }
    double radius_sum() const { return sum_; }
    // smallest stage radius a_i - (a_1 + ... + a_{i-1}); local injectivity scale
    double min_stage_gap() const { return gap_; }

    std::vector<double> eval(const std::vector<double>& thetas) const;
    // standard Jacobian, (k+1) rows (coordinates) by k columns (angles)
    Eigen::MatrixXd jacobian(const std::vector<double>& thetas) const;

    // Exact inverse on the image: peel stages top-down with atan2.  Returns
    // angles in [0, 2pi).  Throws NumericError when the point is not within
    // `tol` of the image (the leftover carry must return to ~0).
    std::vector<double> recover(const std::vector<double>& point, double tol = 1e-9) const;

    // Partial inverse when only the first k coordinates are known (the final
    // carry is not): each stage fixes sin th_j, leaving the cosine sign free,
    // so up to 2^k consistent branches exist.  Branches whose sine magnitude
    // exceeds 1 by more than a sliver are pruned.
    struct Branch {
        std::vector<double> thetas;
        double last = 0.0;  // the carry coordinate implied by the branch
    };
    std::vector<Branch> recover_partial(const std::vector<double>& first) const;

  private:
    std::vector<double> a_;
    double sum_ = 0.0;
    double gap_ = 0.0;
};

struct InjectivityReport {
    std::size_t grid_per_axis = 0;
    std::size_t points = 0;
    std::size_t collisions = 0;    // pairs closer than the threshold
    double min_image_gap = 0.0;    // smallest pairwise distance seen
    double threshold = 0.0;        // min_stage_gap * sin(pi / grid)
};
// Exhaustive pairwise scan over the image of a full angle grid.  Report-only:
// the threshold is a conservative chord bound from the stage gaps, not a
// certificate.  Arity capped at 4 to keep the scan combinatorial.
InjectivityReport torus_injectivity_scan(const TorusMap& torus, std::size_t grid_per_axis);

// Graph hypersurface in R^m:  x_m = sum_{j<m} f_j(x_j), with defining function
// D(x) = x_m - sum f_j(x_j).  Each component is one lacunary series; the
// classes the components live in are what makes curve intersections discrete.
class Hypersurface {
  public:
    explicit Hypersurface(std::vector<LacunarySeries> components);

    std::size_t dimension() const { return f_.size() + 1; }  // m
    std::size_t component_count() const { return f_.size(); }
    const LacunarySeries& component(std::size_t j) const { return f_[j]; }

    CertifiedValue defining(std::span<const double> x, double eps) const;
    // the graph height sum f_j(x_j) over the first m-1 coordinates
    CertifiedValue height(std::span<const double> x_first, double eps) const;

  private:
    std::vector<LacunarySeries> f_;
};

// Components with weight orders cycling 1, 2, 3 (distinct neighbouring classes
// as far as the resolvable families go), shared start and scale.
Hypersurface standard_hypersurface(std::size_t m, int start, double scale);

// Frozen evaluation plans for every component at a shared tolerance; the hot
// object for root scans.  Holds a pointer to the hypersurface: keep it alive.
class HypersurfaceEvaluator {
  public:
    HypersurfaceEvaluator(const Hypersurface& h, double eps);

    double error() const { return err_; }  // summed per-point certificates
    double defining(std::span<const double> x) const;
    // batch-apply component j to xs (amortizes the phase setup)
    void component_values(std::size_t j, std::span<const double> xs, std::span<double> out) const;

  private:
    const Hypersurface* h_;
    std::vector<SeriesEvaluator> evs_;
    double err_ = 0.0;
};

// One graph-manifold coordinate function: a lacunary series pinned to vanish
// at 0 (constant offset removed), optionally with sin(x) added so the slope at
// 0 becomes 1.  Adding an entire bounded function keeps class membership.
struct GraphComponent {
    LacunarySeries series;
    double offset = 0.0;
    bool add_sin = false;

    CertifiedValue eval(double x, int j, double eps) const;
};

class GraphComponentEvaluator {
  public:
    GraphComponentEvaluator(const GraphComponent& c, int j, double eps);

    double error() const { return ev_.point_error(); }
    double eval_point(double x) const;
    void eval_points(std::span<const double> xs, std::span<double> out) const;

  private:
    const GraphComponent* c_;
    SeriesEvaluator ev_;
    int j_;
};

enum class ManifoldVariant {
    torus_perturbed,  // chain coordinates, last x-coordinate carries the series sum
    torus_explicit,   // the same surface through literal product-sum formulas
    convex_graph,     // graph over 2n-2 free coordinates inside a convex hypersurface
};

const char* variant_name(ManifoldVariant v);

// A (2n-2)-parameter manifold in R^{2n} ~ C^n, z_j = (x_j, y_j), ambient
// order (x_1, y_1, ..., x_n, y_n).
//
// Torus variants: the first 2n-2 coordinates are the chain image, x_n is the
// final carry (plus, for the perturbed variant, sum_j f_j(th_j)), and y_n
// completes the point onto the sphere of radius r:
//   y_n = (r^2 - x_1^2 - y_1^2 - ... - x_n^2)^(1/2).
// The radius default 2 sqrt(2n-1) (sum a_i + sum sup|f_j|) keeps the radicand
// at or above (3/4) r^2 everywhere, so the root never degenerates.
//
// Convex-graph variant: free parameters (x_1, y_1, ..., x_{n-1}, y_{n-1}),
//   x_n = sum_j (f_j(x_j) + g_j(y_j)),    y_n = sum_i c_i w_i^2
// with w = (x_1, y_1, ..., x_{n-1}, y_{n-1}, x_n) and all c_i > 0 (positive
// definite Hessian).  Components are normalized so the manifold passes through
// the origin with f_1'(0) = 1 and g_1'(0) = 0.
class Embedding {
  public:
    // Interprets each incoming series scale as a relative knob in [0, 1]; the
    // absolute scales are set so sum_j sup|f_j'| <= 0.1 a_1 (the perturbation
    // stays a C^1-small correction of the explicit surface).
    static Embedding perturbed_torus(std::size_t n, TorusMap torus,
                                     std::vector<LacunarySeries> series,
                                     std::optional<double> radius = std::nullopt);
    static Embedding explicit_torus(std::size_t n, TorusMap torus,
                                    std::optional<double> radius = std::nullopt);
    // Empty convex_coeffs means all ones.
    static Embedding convex_graph(std::size_t n, std::vector<LacunarySeries> f,
                                  std::vector<LacunarySeries> g,
                                  std::vector<double> convex_coeffs = {});

    ManifoldVariant variant() const { return variant_; }
    std::size_t complex_dim() const { return n_; }
    std::size_t param_dim() const { return 2 * n_ - 2; }
    std::size_t ambient_dim() const { return 2 * n_; }
    double radius() const { return r_; }  // 0 for the graph variant
    const TorusMap& torus() const;
    const std::vector<LacunarySeries>& series() const { return f_; }  // scaled
    const std::vector<GraphComponent>& graph_f() const { return gf_; }
    const std::vector<GraphComponent>& graph_g() const { return gg_; }
    const std::vector<double>& convex_coeffs() const { return cvx_; }

    // sum_i c_i w_i^2 over the graph arguments (x_1, y_1, ..., x_{n-1}, y_{n-1}, x_n)
    double convex_height(std::span<const double> w) const;

    std::vector<double> eval(const std::vector<double>& params, double eps = 1e-9) const;

    // Tangent vectors as rows: param_dim x ambient_dim.  Series derivatives
    // enter analytically (certified evaluation), never by finite differences.
    // Throws NumericError on the sphere coordinate singularity y_n = 0.
    Eigen::MatrixXd jacobian(const std::vector<double>& params, double eps = 1e-9) const;

  private:
    Embedding() = default;

    ManifoldVariant variant_ = ManifoldVariant::torus_explicit;
    std::size_t n_ = 0;
    double r_ = 0.0;
    std::optional<TorusMap> torus_;
    std::vector<LacunarySeries> f_;
    std::vector<GraphComponent> gf_, gg_;
    std::vector<double> cvx_;
};

// A submanifold cut out by pinning some parameters; the free rows of the full
// Jacobian at `params` span its tangent space.
struct Restriction {
    std::vector<std::size_t> free_indices;
    std::vector<double> params;
};

// The distinguished n-dimensional slice on which the generating property is
// checked, together with its base point:
//   torus variants: odd angles th_1, th_3, ..., th_{2n-5} pinned to 0; base
//     point has every angle 0 except the last = pi/2 (ambient (0,...,0,a,0,b))
//   graph variant: y_2, ..., y_{n-1} pinned to 0; base point the origin
Restriction generating_slice(const Embedding& e);

Eigen::MatrixXd tangent_basis(const Embedding& e, const std::vector<double>& params,
                              double eps = 1e-9);
Eigen::MatrixXd restricted_tangent(const Embedding& e, const Restriction& r, double eps = 1e-9);

struct GeneratingReport {
    int rank = 0;
    bool generating = false;  // rank == ambient dimension
};
// Rows of `basis` span an n-plane T in R^{2n}; the verdict is rank [B; JB]
// = 2n with J(x_j, y_j) = (-y_j, x_j), equivalent to T meeting iT only at 0.
GeneratingReport generating_check(const Eigen::MatrixXd& basis);

}  // namespace lacuna
