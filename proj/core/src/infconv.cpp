#include "drbsde/infconv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "drbsde/errors.hpp"

namespace drbsde {

namespace {

constexpr int kGrid1d = 33;   // points per zoom level, 1-d search
constexpr int kGrid2d = 13;   // points per dimension, 2-d search
constexpr int kMaxLevels = 24;

struct Best {
    double value;
    double arg_u = 0.0;
    double arg_v = 0.0;
};

}  // namespace

std::shared_ptr<InfconvFamily> InfconvFamily::create(const GeneratorSpec& g,
                                                     std::vector<double> schedule,
                                                     double value_tol) {
    if (!g.decomposition)
        throw InsufficientMetadataError("infconv: generator has no g1+g2 decomposition");
    const auto& dec = *g.decomposition;
    if (!dec.smooth || !dec.discontinuous)
        throw InsufficientMetadataError("infconv: decomposition halves missing");
    if (!dec.smooth->z_growth)
        throw InsufficientMetadataError(
            "infconv: smooth part lacks z-growth metadata (confinement radius underivable)");
    if (!dec.discontinuous->full_growth)
        throw InsufficientMetadataError(
            "infconv: rough part lacks full-growth metadata (confinement radius underivable)");
    if (schedule.empty()) throw InvalidArgumentError("infconv: empty penalty schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] > 0.0))
            throw InvalidArgumentError("infconv: penalty strengths must be positive");
        if (i > 0 && !(schedule[i] > schedule[i - 1]))
            throw InvalidArgumentError("infconv: schedule must be strictly increasing");
    }

    auto family = std::shared_ptr<InfconvFamily>(new InfconvFamily());
    family->smooth_ = dec.smooth;
    family->rough_ = dec.discontinuous;
    family->schedule_ = std::move(schedule);
    family->value_tol_ = value_tol;
    family->lambda_ = dec.smooth->z_growth->lambda;
    family->mu_t_ = dec.discontinuous->full_growth->mu;
    family->lambda_t_ = dec.discontinuous->full_growth->lambda;
    family->base_a_norm_ = dec.smooth->a_norm + family->mu_t_ + family->lambda_t_;
    return family;
}

double InfconvFamily::eval_smooth(std::size_t idx, double t, double b, double y,
                                  double z) const {
    const auto& g1 = *smooth_;
    const double c_req = schedule_[idx] + 2.0 * lambda_;
    const double envelope =
        g1.z_growth->f(t, b) + g1.z_growth->mu * std::abs(y) + lambda_ * std::abs(z);

    Best best{g1.eval(t, b, y, z), z};  // exact center: pins g1_n <= g1
    if (envelope <= 0.0) return best.value;

    for (std::size_t m = idx; m < schedule_.size(); ++m) {
        const double c_nav = schedule_[m] + 2.0 * lambda_;
        const double radius = 2.0 * envelope / (schedule_[m] + lambda_);
        double lo = z - radius;
        double width = 2.0 * radius;
        for (int level = 0; level < kMaxLevels; ++level) {
            const double h = width / (kGrid1d - 1);
            double nav_best = std::numeric_limits<double>::infinity(), nav_arg = lo;
            for (int i = 0; i < kGrid1d; ++i) {
                const double u = lo + h * i;
                const double gv = g1.eval(t, b, y, u);
                const double pen = std::abs(u - z);
                const double nav = gv + c_nav * pen;
                if (nav < nav_best) {
                    nav_best = nav;
                    nav_arg = u;
                }
                const double req = gv + c_req * pen;
                if (req < best.value) best = {req, u};
            }
            if (c_nav * h < 0.5 * value_tol_ || h < 1e-15) break;
            lo = nav_arg - h;
            width = 2.0 * h;
        }
    }
    return best.value;
}

double InfconvFamily::eval_rough(std::size_t idx, double t, double b, double y,
                                 double z) const {
    const auto& g2 = *rough_;
    const double cy_req = schedule_[idx] + 2.0 * mu_t_;
    const double cz_req = schedule_[idx] + 2.0 * lambda_t_;
    const double envelope =
        g2.full_growth->f(t, b) + mu_t_ * std::abs(y) + lambda_t_ * std::abs(z);

    Best best{g2.eval(t, b, y, z), y, z};  // exact center
    if (envelope <= 0.0) return best.value;

    for (std::size_t m = idx; m < schedule_.size(); ++m) {
        const double cy_nav = schedule_[m] + 2.0 * mu_t_;
        const double cz_nav = schedule_[m] + 2.0 * lambda_t_;
        const double ry = 2.0 * envelope / (schedule_[m] + mu_t_);
        const double rz = 2.0 * envelope / (schedule_[m] + lambda_t_);
        double ulo = y - ry, vlo = z - rz;
        double uwidth = 2.0 * ry, vwidth = 2.0 * rz;
        for (int level = 0; level < kMaxLevels; ++level) {
            const double hu = uwidth / (kGrid2d - 1);
            const double hv = vwidth / (kGrid2d - 1);
            double nav_best = std::numeric_limits<double>::infinity(), nav_u = ulo, nav_v = vlo;
            for (int i = 0; i < kGrid2d; ++i) {
                const double u = ulo + hu * i;
                const double pen_u_nav = cy_nav * std::abs(u - y);
                const double pen_u_req = cy_req * std::abs(u - y);
                for (int j = 0; j < kGrid2d; ++j) {
                    const double v = vlo + hv * j;
                    const double gv = g2.eval(t, b, u, v);
                    const double pen_v = std::abs(v - z);
                    const double nav = gv + pen_u_nav + cz_nav * pen_v;
                    if (nav < nav_best) {
                        nav_best = nav;
                        nav_u = u;
                        nav_v = v;
                    }
                    const double req = gv + pen_u_req + cz_req * pen_v;
                    if (req < best.value) best = {req, u, v};
                }
            }
            if ((cy_nav * hu < 0.5 * value_tol_ && cz_nav * hv < 0.5 * value_tol_) ||
                (hu < 1e-15 && hv < 1e-15))
                break;
            ulo = nav_u - hu;
            uwidth = 2.0 * hu;
            vlo = nav_v - hv;
            vwidth = 2.0 * hv;
        }
    }
    return best.value;
}

double InfconvFamily::eval(std::size_t idx, double t, double b, double y, double z) const {
    return eval_smooth(idx, t, b, y, z) + eval_rough(idx, t, b, y, z);
}

GeneratorSpec InfconvFamily::member(std::size_t idx) const {
    if (idx >= schedule_.size()) throw InvalidArgumentError("infconv: member index out of range");
    auto self = shared_from_this();
    const double n = schedule_[idx];

    GeneratorSpec g;
    g.name = "infconv(" + smooth_->name + "+" + rough_->name + ", n=" + std::to_string(n) + ")";
    g.eval = [self, idx](double t, double b, double y, double z) {
        return self->eval(idx, t, b, y, z);
    };
    g.a_norm = base_a_norm_;
    g.y_slope_bound = n + 2.0 * mu_t_;
    g.heavy = true;
    g.regularity = Regularity::continuous;
    g.z_growth = smooth_->z_growth;
    return g;
}

GeneratorSpec infconv_regularize(const GeneratorSpec& g, double n) {
    return InfconvFamily::create(g, {n})->member(0);
}

std::vector<GeneratorSpec> make_infconv_family(const GeneratorSpec& g,
                                               const std::vector<double>& schedule,
                                               double value_tol) {
    auto family = InfconvFamily::create(g, schedule, value_tol);
    std::vector<GeneratorSpec> members;
    members.reserve(schedule.size());
    for (std::size_t i = 0; i < family->size(); ++i) members.push_back(family->member(i));
    return members;
}

}  // namespace drbsde
