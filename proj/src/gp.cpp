/*
 * Copyright 2026 The gpgreeks Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gpgreeks/gp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <json.hpp>

#include "gpgreeks/bs.hpp"
#include "gpgreeks/errors.hpp"
#include "gpgreeks/io.hpp"
#include "optim.hpp"
#include "parallel.hpp"

namespace gpgreeks {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

double tau_of(TimeAxis axis, double maturity, double tcoord) {
    return axis == TimeAxis::TimeToMaturity ? tcoord : maturity - tcoord;
}

struct Factorization {
    Eigen::MatrixXd chol;   // L
    Eigen::MatrixXd basis;  // F
    Eigen::VectorXd detrended;
    Eigen::VectorXd beta;
    Eigen::VectorXd alpha;
    double loglik = 0.0;
    double floor = 0.0;
};

Eigen::MatrixXd trend_basis(const TrendSpec& trend, const Eigen::MatrixXd& inputs) {
    const Eigen::Index n = inputs.rows();
    Eigen::MatrixXd f(n, trend.n_coefficients());
    f.col(0).setOnes();
    if (trend.kind == TrendKind::LinearInS) f.col(1) = inputs.col(1);
    return f;
}

Eigen::VectorXd detrend_reference(const TrendSpec& trend, TimeAxis axis,
                                  const Eigen::MatrixXd& inputs, const Eigen::VectorXd& y) {
    if (trend.kind != TrendKind::ExternalReference) return y;
    if (!trend.reference)
        throw InvalidArgument("TrendSpec: ExternalReference requires a reference");
    Eigen::VectorXd out(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i)
        out[i] = y[i] - trend.reference->value(axis, inputs(i, 0), inputs(i, 1));
    return out;
}

Eigen::VectorXd noise_diagonal(const TrainingSet& ts, const NoiseSpec& noise, double floor) {
    const Eigen::Index n = ts.size();
    Eigen::VectorXd d = Eigen::VectorXd::Constant(n, floor);
    if (noise.kind == NoiseKind::EstimatedConstant) {
        d.array() += noise.sigma2_eps;
    } else {
        if (ts.noise_variances.size() != n)
            throw InvalidArgument("PluginHeteroskedastic requires per-point noise variances");
        for (Eigen::Index i = 0; i < n; ++i) {
            // Virtual points carry structural knowledge; they sit at the floor.
            const double v = ts.virtual_flags[static_cast<size_t>(i)] ? 0.0 : ts.noise_variances[i];
            if (std::isnan(v) || v < 0.0)
                throw InvalidArgument("PluginHeteroskedastic: noise variances must be >= 0");
            d[i] += v;
        }
    }
    return d;
}

// Builds the factorization underlying both the likelihood and the model.
Factorization factorize(const TrainingSet& ts, const KernelSpec& kernel, const TrendSpec& trend,
                        const NoiseSpec& noise, TimeAxis axis,
                        std::optional<double> floor_override) {
    const Eigen::Index n = ts.size();
    Factorization fac;
    fac.detrended = detrend_reference(trend, axis, ts.inputs, ts.outputs);
    fac.floor = floor_override ? *floor_override : nugget_floor_for(fac.detrended);
    fac.basis = trend_basis(trend, ts.inputs);
    if (fac.basis.cols() > n)
        throw InvalidArgument("training set smaller than the number of trend coefficients");

    Eigen::MatrixXd a = kernel_gram(kernel, ts.inputs);
    a.diagonal() += noise_diagonal(ts, noise, fac.floor);

    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
        throw IllConditioned("Cholesky of K + Sigma failed", fac.floor);
    fac.chol = llt.matrixL();

    const auto lower = fac.chol.triangularView<Eigen::Lower>();
    Eigen::MatrixXd w = lower.solve(fac.basis);
    Eigen::VectorXd z = lower.solve(fac.detrended);
    Eigen::MatrixXd gram = w.transpose() * w;
    fac.beta = gram.ldlt().solve(w.transpose() * z);

    Eigen::VectorXd resid = fac.detrended - fac.basis * fac.beta;
    Eigen::VectorXd zr = lower.solve(resid);
    fac.alpha = fac.chol.transpose().triangularView<Eigen::Upper>().solve(zr);

    const double logdet = 2.0 * fac.chol.diagonal().array().log().sum();
    fac.loglik = -0.5 * zr.squaredNorm() - 0.5 * logdet - 0.5 * n * kLog2Pi;
    return fac;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& arr) {
    Eigen::VectorXd v(arr.size());
    for (size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    return v;
}

}  // namespace

std::string to_string(TimeAxis axis) {
    return axis == TimeAxis::Calendar ? "calendar" : "tau";
}

TimeAxis time_axis_from_string(const std::string& name) {
    if (name == "calendar") return TimeAxis::Calendar;
    if (name == "tau") return TimeAxis::TimeToMaturity;
    throw InvalidArgument("unknown time axis: '" + name + "' (expected calendar|tau)");
}

std::string to_string(TrendKind kind) {
    switch (kind) {
        case TrendKind::Constant: return "constant";
        case TrendKind::LinearInS: return "linear_s";
        case TrendKind::ExternalReference: return "bs_reference";
    }
    return "?";
}

TrendKind trend_kind_from_string(const std::string& name) {
    if (name == "constant") return TrendKind::Constant;
    if (name == "linear_s") return TrendKind::LinearInS;
    if (name == "bs_reference") return TrendKind::ExternalReference;
    throw InvalidArgument("unknown trend: '" + name + "' (expected constant|linear_s|bs_reference)");
}

std::string to_string(NoiseKind kind) {
    return kind == NoiseKind::EstimatedConstant ? "estimated" : "plugin";
}

NoiseKind noise_kind_from_string(const std::string& name) {
    if (name == "estimated") return NoiseKind::EstimatedConstant;
    if (name == "plugin") return NoiseKind::PluginHeteroskedastic;
    throw InvalidArgument("unknown noise kind: '" + name + "' (expected estimated|plugin)");
}

double BsReference::value(TimeAxis axis, double tcoord, double s) const {
    BsParams p{r, sigma, strike, maturity, 0.0};
    double tau = tau_of(axis, maturity, tcoord);
    if (tau < 0.0) tau = 0.0;
    return bs_price(p, tau, s);
}

double BsReference::grad(TimeAxis axis, int j, double tcoord, double s) const {
    BsParams p{r, sigma, strike, maturity, 0.0};
    // Clamp away from the maturity singularity; the tau->0 limits are exact
    // step/zero shapes and the clamped formulas reproduce them.
    double tau = tau_of(axis, maturity, tcoord);
    if (tau < 1e-8) tau = 1e-8;
    if (j == 1) return bs_delta(p, tau, s);
    const double theta_cal = bs_theta(p, tau, s);
    return axis == TimeAxis::TimeToMaturity ? -theta_cal : theta_cal;
}

TrainingSet TrainingSet::from_design(const Design& d) {
    const Design merged = merge_duplicates(d);
    TrainingSet ts;
    ts.inputs = merged.points;
    ts.outputs = merged.y;
    ts.noise_variances = merged.noise_var;
    ts.virtual_flags = merged.virtual_flags;
    for (Eigen::Index i = 0; i < ts.outputs.size(); ++i)
        if (std::isnan(ts.outputs[i]))
            throw InvalidArgument("TrainingSet::from_design: unfilled observation at row " +
                                  std::to_string(i));
    return ts;
}

void FitConfig::validate() const {
    if (restarts < 1) throw InvalidArgument("FitConfig: restarts must be >= 1");
    if (coarse_evals < 10 || refine_evals < 10)
        throw InvalidArgument("FitConfig: evaluation budgets too small");
    auto bad = [](double lo, double hi) { return !(lo > 0.0) || !(hi > lo); };
    if (bad(lengthscale_lo, lengthscale_hi) || bad(process_var_lo, process_var_hi) ||
        bad(noise_lo, noise_hi))
        throw InvalidArgument("FitConfig: bounds must satisfy 0 < lo < hi");
}

double nugget_floor_for(const Eigen::VectorXd& y) {
    const Eigen::Index n = y.size();
    if (n < 2) return 0.0;
    const double mean = y.mean();
    const double var = (y.array() - mean).square().sum() / (n - 1);
    return 1e-8 * var;
}

double log_marginal_likelihood(const TrainingSet& ts, const KernelSpec& kernel,
                               const TrendSpec& trend, const NoiseSpec& noise, TimeAxis axis) {
    kernel.validate();
    return factorize(ts, kernel, trend, noise, axis, std::nullopt).loglik;
}

GpModel::GpModel(TrainingSet ts, KernelSpec kernel, TrendSpec trend, NoiseSpec noise,
                 TimeAxis time_axis, std::optional<double> floor_override)
    : ts_(std::move(ts)), kernel_(std::move(kernel)), trend_(std::move(trend)),
      noise_(noise), time_axis_(time_axis) {
    kernel_.validate();
    if (ts_.dim() != kernel_.dim())
        throw InvalidArgument("GpModel: kernel dimension does not match training inputs");
    Factorization fac = factorize(ts_, kernel_, trend_, noise_, time_axis_, floor_override);
    floor_ = fac.floor;
    chol_ = std::move(fac.chol);
    basis_ = std::move(fac.basis);
    detrended_ = std::move(fac.detrended);
    trend_.beta = std::move(fac.beta);
    alpha_ = std::move(fac.alpha);
    loglik_ = fac.loglik;
}

double GpModel::trend_value(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    double v = trend_.beta[0];
    if (trend_.kind == TrendKind::LinearInS) v += trend_.beta[1] * x[1];
    if (trend_.kind == TrendKind::ExternalReference)
        v += trend_.reference->value(time_axis_, x[0], x[1]);
    return v;
}

double GpModel::trend_grad(int j, const Eigen::Ref<const Eigen::VectorXd>& x) const {
    switch (trend_.kind) {
        case TrendKind::Constant: return 0.0;
        case TrendKind::LinearInS: return j == 1 ? trend_.beta[1] : 0.0;
        case TrendKind::ExternalReference: return trend_.reference->grad(time_axis_, j, x[0], x[1]);
    }
    return 0.0;
}

std::pair<double, double> GpModel::predict(const Eigen::Ref<const Eigen::VectorXd>& x_star) const {
    const Eigen::VectorXd k = kernel_cross_vector(kernel_, ts_.inputs, x_star);
    const double mean = trend_value(x_star) + k.dot(alpha_);
    const Eigen::VectorXd v = chol_.triangularView<Eigen::Lower>().solve(k);
    double var = kernel_.process_variance - v.squaredNorm();
    if (var < 0.0) {
        if (var < -1e-10 * kernel_.process_variance) note_clamp();
        var = 0.0;
    }
    return {mean, var};
}

Eigen::MatrixXd GpModel::predict_cov(const Eigen::MatrixXd& xs) const {
    const Eigen::Index m = xs.rows();
    if (m < 1) throw InvalidArgument("predict_cov: empty site list");
    Eigen::MatrixXd kstar(ts_.size(), m);
    for (Eigen::Index i = 0; i < m; ++i)
        kstar.col(i) = kernel_cross_vector(kernel_, ts_.inputs, xs.row(i).transpose());
    Eigen::MatrixXd prior = kernel_gram(kernel_, xs);
    const Eigen::MatrixXd v = chol_.triangularView<Eigen::Lower>().solve(kstar);
    Eigen::MatrixXd cov = prior - v.transpose() * v;
    cov = 0.5 * (cov + cov.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.eigenvalues().minCoeff() < 0.0) {
        if (eig.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, kernel_.process_variance))
            note_clamp();
        Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
        cov = eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
        cov = 0.5 * (cov + cov.transpose()).eval();
    }
    return cov;
}

GpModel GpModel::update_rank1(const Eigen::Ref<const Eigen::VectorXd>& x_new, double y_new,
                              double noise_new) const {
    const Eigen::Index n = ts_.size();

    // Duplicate inputs collapse by the merging rule; that path rebuilds.
    for (Eigen::Index i = 0; i < n; ++i) {
        if ((ts_.inputs.row(i).transpose() - x_new).cwiseAbs().maxCoeff() == 0.0) {
            TrainingSet merged = ts_;
            merged.outputs[i] = 0.5 * (ts_.outputs[i] + y_new);
            if (merged.noise_variances.size() == n && !std::isnan(merged.noise_variances[i]))
                merged.noise_variances[i] = 0.25 * (merged.noise_variances[i] + noise_new);
            return GpModel(std::move(merged), kernel_, trend_, noise_, time_axis_, floor_);
        }
    }

    TrainingSet ext = ts_;
    ext.inputs.conservativeResize(n + 1, Eigen::NoChange);
    ext.inputs.row(n) = x_new.transpose();
    ext.outputs.conservativeResize(n + 1);
    ext.outputs[n] = y_new;
    if (ext.noise_variances.size() == n) {
        ext.noise_variances.conservativeResize(n + 1);
        ext.noise_variances[n] = noise_new;
    } else {
        ext.noise_variances = Eigen::VectorXd::Constant(n + 1, std::nan(""));
        ext.noise_variances.head(n).setZero();
        ext.noise_variances[n] = noise_new;
    }
    ext.virtual_flags.push_back(0);

    GpModel out(*this);  // shares the clamp counter; everything else replaced below
    out.ts_ = std::move(ext);

    // Extend L with one row: [l12; l22], l12 = L^{-1} k, l22^2 = a_nn - |l12|^2.
    const Eigen::VectorXd k = kernel_cross_vector(kernel_, ts_.inputs, x_new);
    const double extra = noise_.kind == NoiseKind::EstimatedConstant ? noise_.sigma2_eps : noise_new;
    const double a_nn = kernel_.process_variance + extra + floor_;
    const Eigen::VectorXd l12 = chol_.triangularView<Eigen::Lower>().solve(k);
    const double rem = a_nn - l12.squaredNorm();
    if (!(rem > 0.0))
        throw IllConditioned("rank-1 update: new point makes the system singular", floor_);

    Eigen::MatrixXd lext = Eigen::MatrixXd::Zero(n + 1, n + 1);
    lext.topLeftCorner(n, n) = chol_;
    lext.row(n).head(n) = l12.transpose();
    lext(n, n) = std::sqrt(rem);
    out.chol_ = std::move(lext);

    out.detrended_ = detrend_reference(trend_, time_axis_, out.ts_.inputs, out.ts_.outputs);
    out.basis_ = trend_basis(trend_, out.ts_.inputs);

    const auto lower = out.chol_.triangularView<Eigen::Lower>();
    const Eigen::MatrixXd w = lower.solve(out.basis_);
    const Eigen::VectorXd z = lower.solve(out.detrended_);
    out.trend_.beta = (w.transpose() * w).ldlt().solve(w.transpose() * z);

    const Eigen::VectorXd zr = z - w * out.trend_.beta;
    out.alpha_ = out.chol_.transpose().triangularView<Eigen::Upper>().solve(zr);
    const double logdet = 2.0 * out.chol_.diagonal().array().log().sum();
    out.loglik_ = -0.5 * zr.squaredNorm() - 0.5 * logdet - 0.5 * (n + 1) * kLog2Pi;
    return out;
}

GpModel fit(const TrainingSet& ts, KernelFamily family, TrendSpec trend, NoiseKind noise_kind,
            const FitConfig& cfg, TimeAxis time_axis) {
    cfg.validate();
    const int d = ts.dim();
    const Eigen::Index n = ts.size();
    const int p = trend.n_coefficients();
    if (n < d + p + 1)
        throw InvalidArgument("fit: need at least dim + trend coefficients + 1 training points");

    const Eigen::VectorXd y_fit = detrend_reference(trend, time_axis, ts.inputs, ts.outputs);
    const double y_mean = y_fit.mean();
    double var_y = (y_fit.array() - y_mean).square().sum() / std::max<Eigen::Index>(n - 1, 1);
    if (!(var_y > 1e-12)) var_y = 1e-12;

    const bool estimate_noise = noise_kind == NoiseKind::EstimatedConstant;
    const int n_par = d + 1 + (estimate_noise ? 1 : 0);

    Eigen::VectorXd lo(n_par), hi(n_par);
    for (int k = 0; k < d; ++k) {
        double range = ts.inputs.col(k).maxCoeff() - ts.inputs.col(k).minCoeff();
        if (!(range > 0.0)) range = 1.0;
        lo[k] = std::log(cfg.lengthscale_lo * range);
        hi[k] = std::log(cfg.lengthscale_hi * range);
    }
    lo[d] = std::log(cfg.process_var_lo * var_y);
    hi[d] = std::log(cfg.process_var_hi * var_y);
    if (estimate_noise) {
        lo[d + 1] = std::log(cfg.noise_lo * var_y);
        hi[d + 1] = std::log(cfg.noise_hi * var_y);
    }

    const auto unpack = [&](const Eigen::VectorXd& theta) {
        KernelSpec spec;
        spec.family = family;
        spec.lengthscales = theta.head(d).array().exp().matrix();
        spec.process_variance = std::exp(theta[d]);
        NoiseSpec noise{noise_kind, estimate_noise ? std::exp(theta[d + 1]) : 0.0};
        return std::make_pair(spec, noise);
    };

    const auto objective = [&](const Eigen::VectorXd& theta_raw) -> double {
        Eigen::VectorXd theta = theta_raw.cwiseMax(lo).cwiseMin(hi);
        const double outside = (theta_raw - theta).squaredNorm();
        auto [spec, noise] = unpack(theta);
        double nll;
        try {
            nll = -factorize(ts, spec, trend, noise, time_axis, std::nullopt).loglik;
        } catch (const IllConditioned&) {
            return 1e100;
        }
        return nll + 1e4 * outside;
    };

    // Multistart points: scrambled Halton over the log-bound box.
    static const unsigned bases[] = {2, 3, 5, 7, 11, 13};
    Rng scramble(cfg.seed, StreamId::Optimizer, 0);
    Eigen::VectorXd shift(n_par);
    for (int k = 0; k < n_par; ++k) shift[k] = scramble.uniform01();

    std::vector<Eigen::VectorXd> starts(cfg.restarts);
    for (int i = 0; i < cfg.restarts; ++i) {
        Eigen::VectorXd x(n_par);
        for (int k = 0; k < n_par; ++k) {
            double u = halton_point(static_cast<std::uint64_t>(i) + 1, bases[k % 6]) + shift[k];
            u -= std::floor(u);
            x[k] = lo[k] + u * (hi[k] - lo[k]);
        }
        starts[i] = x;
    }

    const Eigen::VectorXd step0 = 0.15 * (hi - lo);
    std::vector<NelderMeadResult> coarse(starts.size());
    auto run_start = [&](std::size_t i) {
        coarse[i] = nelder_mead(objective, starts[i], step0, cfg.coarse_evals);
    };
    if (cfg.parallel) parallel_for(starts.size(), run_start);
    else for (std::size_t i = 0; i < starts.size(); ++i) run_start(i);

    std::vector<int> order(coarse.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (coarse[a].f != coarse[b].f) return coarse[a].f < coarse[b].f;
        return a < b;
    });

    const int n_refine = std::min<int>(std::max(cfg.refine_top, 1), static_cast<int>(order.size()));
    std::vector<NelderMeadResult> refined(n_refine);
    auto run_refine = [&](std::size_t i) {
        refined[i] =
            nelder_mead(objective, coarse[order[i]].x, 0.2 * step0, cfg.refine_evals, 1e-10);
    };
    if (cfg.parallel) parallel_for(static_cast<std::size_t>(n_refine), run_refine);
    else for (std::size_t i = 0; i < static_cast<std::size_t>(n_refine); ++i) run_refine(i);

    int best = 0;
    for (int i = 1; i < n_refine; ++i)
        if (refined[i].f < refined[best].f) best = i;
    if (refined[best].f >= 1e100)
        throw IllConditioned("fit: every restart failed Cholesky", nugget_floor_for(y_fit));

    const Eigen::VectorXd theta = refined[best].x.cwiseMax(lo).cwiseMin(hi);
    auto [spec, noise] = unpack(theta);
    return GpModel(ts, spec, std::move(trend), noise, time_axis);
}

std::string GpModel::to_json() const {
    nlohmann::json j;
    j["format"] = "gpgreeks-model/1";
    j["time_axis"] = to_string(time_axis_);
    j["floor"] = floor_;
    j["kernel"] = {{"family", gpgreeks::to_string(kernel_.family)},
                   {"lengthscales", vector_to_json(kernel_.lengthscales)},
                   {"process_variance", kernel_.process_variance}};
    nlohmann::json jt;
    jt["kind"] = gpgreeks::to_string(trend_.kind);
    jt["beta"] = vector_to_json(trend_.beta);
    if (trend_.reference) {
        jt["reference"] = {{"r", trend_.reference->r},
                           {"sigma", trend_.reference->sigma},
                           {"strike", trend_.reference->strike},
                           {"maturity", trend_.reference->maturity}};
    }
    j["trend"] = jt;
    j["noise"] = {{"kind", gpgreeks::to_string(noise_.kind)}, {"sigma2_eps", noise_.sigma2_eps}};
    nlohmann::json jts;
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < ts_.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < ts_.dim(); ++k) row.push_back(ts_.inputs(i, k));
        rows.push_back(row);
    }
    jts["inputs"] = rows;
    jts["outputs"] = vector_to_json(ts_.outputs);
    jts["noise_variances"] = vector_to_json(ts_.noise_variances);
    nlohmann::json flags = nlohmann::json::array();
    for (auto f : ts_.virtual_flags) flags.push_back(static_cast<int>(f));
    jts["virtual_flags"] = flags;
    j["training"] = jts;
    return j.dump(2);
}

GpModel GpModel::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.value("format", "") != "gpgreeks-model/1")
        throw InvalidArgument("model blob: unknown format tag");

    KernelSpec spec;
    spec.family = kernel_family_from_string(j["kernel"]["family"].get<std::string>());
    spec.lengthscales = vector_from_json(j["kernel"]["lengthscales"]);
    spec.process_variance = j["kernel"]["process_variance"].get<double>();

    TrendSpec trend;
    trend.kind = trend_kind_from_string(j["trend"]["kind"].get<std::string>());
    if (j["trend"].contains("reference")) {
        const auto& jr = j["trend"]["reference"];
        trend.reference = BsReference{jr["r"].get<double>(), jr["sigma"].get<double>(),
                                      jr["strike"].get<double>(), jr["maturity"].get<double>()};
    }

    NoiseSpec noise{noise_kind_from_string(j["noise"]["kind"].get<std::string>()),
                    j["noise"]["sigma2_eps"].get<double>()};

    const auto& jts = j["training"];
    const auto& rows = jts["inputs"];
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    const int d = n > 0 ? static_cast<int>(rows[0].size()) : 2;
    TrainingSet ts;
    ts.inputs.resize(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) ts.inputs(i, k) = rows[static_cast<size_t>(i)][k].get<double>();
    ts.outputs = vector_from_json(jts["outputs"]);
    ts.noise_variances = vector_from_json(jts["noise_variances"]);
    for (const auto& f : jts["virtual_flags"])
        ts.virtual_flags.push_back(static_cast<std::uint8_t>(f.get<int>()));

    return GpModel(std::move(ts), std::move(spec), std::move(trend), noise,
                   time_axis_from_string(j["time_axis"].get<std::string>()),
                   j["floor"].get<double>());
}

void GpModel::save(const std::string& path) const { atomic_write_text(path, to_json()); }

GpModel GpModel::load(const std::string& path) { return from_json(read_text(path)); }

}  // namespace gpgreeks
