#include "ncfa/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ncfa/majorization.hpp"
#include "ncfa/parallel.hpp"

namespace ncfa {

void RatioReport::finalize() {
    trials = static_cast<int>(lhs.size());
    excluded = 0;
    std::vector<double> ratios;
    ratios.reserve(lhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        const double l = lhs[i], r = rhs[i];
        if (l == 0.0 && r == 0.0) {
            ++excluded;
            continue;
        }
        ratios.push_back(r == 0.0 ? kInf : l / r);
    }
    if (excluded > 0) surrogate_flags.push_back("zero-pairs-excluded");
    std::sort(surrogate_flags.begin(), surrogate_flags.end());
    surrogate_flags.erase(std::unique(surrogate_flags.begin(), surrogate_flags.end()), surrogate_flags.end());
    if (ratios.empty()) {
        ratio_min = ratio_max = ratio_geomean = 0.0;
        return;
    }
    ratio_min = *std::min_element(ratios.begin(), ratios.end());
    ratio_max = *std::max_element(ratios.begin(), ratios.end());
    double log_sum = 0.0;
    int log_count = 0;
    for (double r : ratios) {
        if (r > 0.0 && std::isfinite(r)) {
            log_sum += std::log(r);
            ++log_count;
        }
    }
    ratio_geomean = log_count > 0 ? std::exp(log_sum / log_count) : 0.0;
}

std::uint64_t trial_seed(const EnsembleSpec& spec, int trial) {
    return derive_stream(spec.seed, {static_cast<std::uint64_t>(trial)});
}

TensorFamily trial_family(const EnsembleSpec& spec, int trial) {
    return sample_family(spec.with_seed(trial_seed(spec, trial)));
}

namespace {

void require_trials(int trials) {
    if (trials < 1) throw std::invalid_argument("harness: trials must be >= 1");
}

void require_mean_zero(const EnsembleSpec& spec, const char* who) {
    if (!spec.mean_zero) throw std::invalid_argument(std::string(who) + ": requires a mean-zero ensemble");
}

double factor_min_eigenvalue(const TensorFamily& family, int k) {
    if (family.mode() == TensorFamily::Mode::fermionic)
        return family.fermionic_constant(k) - std::abs(family.fermionic_linear(k));
    const EigenSystem es = hermitian_eigensystem(family.factor(k).element.block(0));
    return es.values.empty() ? 0.0 : es.values.front();
}

void require_positive_factors(const TensorFamily& family) {
    for (int k = 0; k < family.count(); ++k)
        if (factor_min_eigenvalue(family, k) < -1e-10)
            throw std::invalid_argument("harness: positivity violated for the Z_E^1 form");
}

std::vector<AlgElement> embedded_list(const TensorFamily& family) {
    std::vector<AlgElement> xs;
    xs.reserve(family.count());
    for (int k = 0; k < family.count(); ++k) xs.push_back(family.embedded(k));
    return xs;
}

}  // namespace

RatioReport verify_rosenthal(const EnsembleSpec& spec, double p, int trials) {
    require_trials(trials);
    require_mean_zero(spec, "verify_rosenthal");
    if (!(p >= 2.0) || std::isinf(p))
        throw std::invalid_argument("verify_rosenthal: requires 2 <= p < inf (theorem hypothesis)");
    RatioReport report;
    report.theorem_id = "rosenthal";
    report.spec_label = NormSpec::Lp(p).format();
    report.ensemble = spec;
    report.lhs.resize(trials);
    report.rhs.resize(trials);
    parallel_for(trials, [&](int t) {
        const TensorFamily family = trial_family(spec, t);
        report.lhs[t] = norm(NormSpec::Lp(p), singular_value_function(family.embedded_sum()));
        double sum_p = 0.0, sum_2 = 0.0;
        for (int k = 0; k < family.count(); ++k) {
            const StepFunction mu_k = family.factor_mu(k);
            if (!mu_k.empty()) {
                sum_p += integrate_power(mu_k, p, 0.0, kInf);
                sum_2 += integrate_power(mu_k, 2.0, 0.0, kInf);
            }
        }
        report.rhs[t] = std::pow(sum_p, 1.0 / p) + std::sqrt(sum_2);
    });
    report.finalize();
    return report;
}

RatioReport verify_js(const EnsembleSpec& spec, const NormSpec& E, JsForm form, const std::string& direction,
                      int trials) {
    require_trials(trials);
    if (form == JsForm::mean_zero) require_mean_zero(spec, "verify_js (Z_E^2 form)");
    RatioReport report;
    report.theorem_id = form == JsForm::mean_zero ? "js" : "js-positive";
    report.spec_label = E.format();
    report.variant = direction;
    report.ensemble = spec;
    report.exploratory = E.has_endpoint_exponent();
    report.surrogate_flags.push_back("holmstedt-L1+Lp");
    const NormSpec ze = NormSpec::ZE(E, form == JsForm::mean_zero ? 2.0 : 1.0);
    report.lhs.resize(trials);
    report.rhs.resize(trials);
    parallel_for(trials, [&](int t) {
        TensorFamily family = trial_family(spec, t);
        if (form == JsForm::positive) {
            family = positive_variant(family);
            require_positive_factors(family);
        }
        report.lhs[t] = norm(E, singular_value_function(family.embedded_sum()));
        report.rhs[t] = norm(ze, family.direct_sum_mu());
    });
    report.finalize();
    return report;
}

RatioReport verify_khinchine(const EnsembleSpec& spec, const NormSpec& E, int trials) {
    require_trials(trials);
    require_mean_zero(spec, "verify_khinchine");
    if (E.has_endpoint_exponent())
        throw std::invalid_argument("verify_khinchine: E must have exponents strictly inside (1,inf)");
    RatioReport report;
    report.theorem_id = "khinchine";
    report.spec_label = E.format();
    report.ensemble = spec;
    report.lhs.resize(trials);
    report.rhs.resize(trials);
    parallel_for(trials, [&](int t) {
        const TensorFamily family = trial_family(spec, t);
        report.lhs[t] = norm(E, singular_value_function(family.embedded_sum()));
        report.rhs[t] = norm(E, singular_value_function(square_function(embedded_list(family))));
    });
    report.finalize();
    return report;
}

std::string variant_name(ModularVariant v) {
    switch (v) {
        case ModularVariant::positive:
            return "positive";
        case ModularVariant::mean_zero:
            return "mean_zero";
        case ModularVariant::khinchine:
            return "khinchine";
    }
    return {};
}

RatioReport verify_modular(const EnsembleSpec& spec, const OrliczFunction& phi, ModularVariant variant, int trials) {
    require_trials(trials);
    if (!(phi.p_convex() > 1.0))
        throw std::invalid_argument("verify_modular: requires 1 < p_convex <= q_concave < inf");
    phi.validate();  // declared convexity metadata must hold numerically
    if (variant != ModularVariant::positive) require_mean_zero(spec, "verify_modular");
    RatioReport report;
    report.theorem_id = "modular";
    report.spec_label = "orlicz(" + phi.label() + ")";
    report.variant = variant_name(variant);
    report.ensemble = spec;
    if (variant == ModularVariant::mean_zero) report.surrogate_flags.push_back("holmstedt-L1+L2");
    report.lhs.resize(trials);
    report.rhs.resize(trials);
    parallel_for(trials, [&](int t) {
        TensorFamily family = trial_family(spec, t);
        if (variant == ModularVariant::positive) {
            family = positive_variant(family);
            require_positive_factors(family);
        }
        report.lhs[t] = phi_moment(phi, singular_value_function(family.embedded_sum()));
        switch (variant) {
            case ModularVariant::positive: {
                const StepFunction x_mu = family.direct_sum_mu();
                const double head = x_mu.empty() ? 0.0 : phi_moment(phi, restrict_to(x_mu, 0.0, 1.0));
                const double l1 = x_mu.empty() ? 0.0 : integrate_power(x_mu, 1.0, 0.0, kInf);
                report.rhs[t] = head + phi(l1);
                break;
            }
            case ModularVariant::mean_zero: {
                const StepFunction x_mu = family.direct_sum_mu();
                const double head = x_mu.empty() ? 0.0 : phi_moment(phi, restrict_to(x_mu, 0.0, 1.0));
                report.rhs[t] = head + phi(norm(NormSpec::sum(1.0, 2.0), x_mu));
                break;
            }
            case ModularVariant::khinchine:
                report.rhs[t] = phi_moment(phi, singular_value_function(square_function(embedded_list(family))));
                break;
        }
    });
    report.finalize();
    return report;
}

void lemma41_sides(const TensorFamily& family, double q, double& lhs, double& rhs) {
    lhs = norm(NormSpec::Lp(q), singular_value_function(family.embedded_sum()));
    rhs = norm(NormSpec::Lp(q), rademacher_expand(family).mu());
}

LemmaBoundsResult verify_lemma_bounds(const EnsembleSpec& spec, const std::vector<double>& q_list, int trials) {
    require_trials(trials);
    require_mean_zero(spec, "verify_lemma_bounds");
    LemmaBoundsResult result;
    const std::vector<int> n_list = {1, 2, 3};
    const std::size_t rademacher_cells = q_list.size();
    result.reports.resize(rademacher_cells + n_list.size());
    for (std::size_t qi = 0; qi < rademacher_cells; ++qi) {
        result.reports[qi].theorem_id = "lemma-rademacher";
        result.reports[qi].spec_label = NormSpec::Lp(q_list[qi]).format();
        result.reports[qi].ensemble = spec;
        result.reports[qi].lhs.resize(trials);
        result.reports[qi].rhs.resize(trials);
    }
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        auto& rep = result.reports[rademacher_cells + ni];
        rep.theorem_id = "lemma-cap";
        rep.spec_label = "N=" + std::to_string(n_list[ni]);
        rep.ensemble = spec;
        rep.lhs.resize(trials);
        rep.rhs.resize(trials);
    }
    std::vector<std::vector<std::string>> failures(trials);
    parallel_for(trials, [&](int t) {
        const TensorFamily family = trial_family(spec, t);
        const StepFunction mu_sum = singular_value_function(family.embedded_sum());
        const StepFunction mu_rad = rademacher_expand(family).mu();
        const StepFunction x_mu = family.direct_sum_mu();
        for (std::size_t qi = 0; qi < rademacher_cells; ++qi) {
            const double q = q_list[qi];
            const double lhs = norm(NormSpec::Lp(q), mu_sum);
            const double rhs = norm(NormSpec::Lp(q), mu_rad);
            result.reports[qi].lhs[t] = lhs;
            result.reports[qi].rhs[t] = rhs;
            if (lhs > 2.0 * rhs + 1e-9)
                failures[t].push_back("lemma-rademacher: ||sum||_" + NormSpec::Lp(q).format() + " = " +
                                      std::to_string(lhs) + " > 2*" + std::to_string(rhs) + " (trial " +
                                      std::to_string(t) + ")");
        }
        for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
            const double q = std::ldexp(1.0, n_list[ni]);  // 2^N
            const double lhs = norm(NormSpec::Lp(q), mu_sum);
            const double rhs = norm(NormSpec::cap(2.0, q), x_mu);
            auto& rep = result.reports[rademacher_cells + ni];
            rep.lhs[t] = lhs;
            rep.rhs[t] = rhs;
            if (n_list[ni] == 1 && lhs > rhs + 1e-9)
                failures[t].push_back("lemma-cap: c_1 = 1 equality case violated (trial " + std::to_string(t) + ")");
        }
        // column-extraction contraction on a random two-column input
        Rng rng(derive_stream(spec.seed, {0xC01ull, static_cast<std::uint64_t>(t)}));
        std::vector<AlgElement> entries;
        for (int i = 0; i < 2 * family.count(); ++i)
            entries.push_back(random_element(family.ambient(), rng, false));
        const OpMatrixElement z = make_op_matrix(family.count(), 2, std::move(entries));
        const StepFunction mu_lz = op_L(z).mu();
        const StepFunction mu_z = op_matrix_mu(z);
        for (double q : {2.0, 4.0}) {
            const double lhs = norm(NormSpec::Lp(q), mu_lz);
            const double rhs = norm(NormSpec::Lp(q), mu_z);
            if (lhs > rhs + 1e-9)
                failures[t].push_back("lemma-L: ||Lz||_" + NormSpec::Lp(q).format() + " exceeds ||z|| (trial " +
                                      std::to_string(t) + ")");
        }
    });
    for (auto& rep : result.reports) rep.finalize();
    for (auto& per_trial : failures)
        result.hard_failures.insert(result.hard_failures.end(), per_trial.begin(), per_trial.end());
    return result;
}

void footnote_norms(int n, double p, double& direct, double& star) {
    const std::vector<AlgElement> xs = rank_one_family(n);
    direct = norm(NormSpec::Lp(p), singular_value_function(square_function(xs)));
    star = norm(NormSpec::Lp(p), singular_value_function(square_function_star(xs)));
}

namespace {

EnsembleKind cycle_kind(int i) {
    switch (i % 3) {
        case 0:
            return EnsembleKind::classical;
        case 1:
            return EnsembleKind::gue_like;
        default:
            return EnsembleKind::fermionic;
    }
}

// ||sum_k x_k-hat||_2^2. Large Kronecker ambients use a sparse-exact
// evaluation: off-diagonal positions of distinct slot embeddings never
// collide, so the diagonal is accumulated densely (where the cross terms
// live) and each replicated off-diagonal entry is summed once per copy
// count. Identical arithmetic content to the dense pass, without touching
// dim^2 exact zeros.
double family_sum_l2_squared(const TensorFamily& family) {
    if (family.mode() == TensorFamily::Mode::fermionic || family.ambient_dim() <= TensorFamily::kFullCheckDim) {
        const double v = l2_norm(family.embedded_sum());
        return v * v;
    }
    const int dim = family.ambient_dim();
    std::vector<cplx> diag(dim, cplx(0.0, 0.0));
    double off_sq = 0.0;
    int left = 1;
    std::vector<int> dims(family.count());
    for (int k = 0; k < family.count(); ++k) dims[k] = family.factor(k).algebra.blocks()[0].dim;
    for (int k = 0; k < family.count(); ++k) {
        const int n = dims[k];
        int right = 1;
        for (int j = k + 1; j < family.count(); ++j) right *= dims[j];
        const ComplexMatrix& x = family.factor(k).element.block(0);
        for (int a = 0; a < left; ++a)
            for (int i = 0; i < n; ++i)
                for (int r = 0; r < right; ++r) diag[(a * n + i) * right + r] += x(i, i);
        double block_off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) block_off += std::norm(x(i, j));
        off_sq += block_off * left * right;
        left *= n;
    }
    double diag_sq = 0.0;
    for (const cplx& v : diag) diag_sq += std::norm(v);
    return family.ambient().blocks()[0].weight * (diag_sq + off_sq);
}

}  // namespace

OracleOutcome oracle_l2_orthogonality(std::uint64_t seed, int trials) {
    OracleOutcome outcome;
    outcome.trials = trials;
    std::vector<std::string> per_trial(trials);
    parallel_for(trials, [&](int t) {
        EnsembleSpec spec;
        spec.kind = cycle_kind(t);
        spec.count = 1 + (t / 3) % 6;
        spec.dim = ((t / 18) % 2 == 0) ? 2 : 4;
        spec.mean_zero = true;
        spec.seed = derive_stream(seed, {static_cast<std::uint64_t>(t)});
        const TensorFamily family = sample_family(spec);
        const double lhs_sq = family_sum_l2_squared(family);
        double rhs_sq = 0.0;
        for (int k = 0; k < family.count(); ++k) {
            const AlgElement& x = family.mode() == TensorFamily::Mode::fermionic ? family.embedded(k)
                                                                                 : family.factor(k).element;
            rhs_sq += std::pow(l2_norm(x), 2.0);
        }
        if (std::abs(lhs_sq - rhs_sq) > 1e-9 * rhs_sq)
            per_trial[t] = "l2-orthogonality: " + spec.format() + " |" + std::to_string(lhs_sq) + " - " +
                           std::to_string(rhs_sq) + "| > 1e-9 rel";
    });
    for (const auto& msg : per_trial)
        if (!msg.empty()) {
            ++outcome.failures;
            if (outcome.messages.size() < 16) outcome.messages.push_back(msg);
        }
    return outcome;
}

OracleOutcome oracle_duality_pairing(std::uint64_t seed, int trials) {
    OracleOutcome outcome;
    outcome.trials = trials;
    std::vector<std::string> per_trial(trials);
    parallel_for(trials, [&](int t) {
        EnsembleSpec spec;
        spec.kind = cycle_kind(t);
        spec.count = 1 + t % 4;
        spec.dim = 2;
        spec.mean_zero = true;
        spec.seed = derive_stream(seed, {0xD0ull, static_cast<std::uint64_t>(t)});
        const TensorFamily family = sample_family(spec);
        Rng rng(derive_stream(seed, {0xD1ull, static_cast<std::uint64_t>(t)}));
        std::vector<AlgElement> zs;
        for (int k = 0; k < family.count(); ++k) zs.push_back(random_element(family.ambient(), rng, true));
        const DirectSumElement z = make_direct_sum(zs);
        const AlgElement w = random_element(family.ambient(), rng, true);
        const cplx t_lhs = trace_of_product(op_T(family, z), w);
        const cplx t_rhs = direct_sum_pairing(z, op_Tstar(family, w));
        if (std::abs(t_lhs - t_rhs) > 1e-8 * (1.0 + std::abs(t_lhs))) {
            per_trial[t] = "duality: (T,T*) pairing mismatch on " + spec.format();
            return;
        }
        const ColumnElement col = make_column(zs);
        const cplx s_lhs = trace_of_product(op_Sstar(family, col), w);
        const cplx s_rhs = column_pairing(col, op_S(family, w));
        if (std::abs(s_lhs - s_rhs) > 1e-8 * (1.0 + std::abs(s_lhs)))
            per_trial[t] = "duality: (S,S*) pairing mismatch on " + spec.format();
    });
    for (const auto& msg : per_trial)
        if (!msg.empty()) {
            ++outcome.failures;
            if (outcome.messages.size() < 16) outcome.messages.push_back(msg);
        }
    return outcome;
}

OracleOutcome oracle_ce_submajorization(std::uint64_t seed, int trials) {
    OracleOutcome outcome;
    outcome.trials = trials;
    std::vector<std::string> per_trial(trials);
    parallel_for(trials, [&](int t) {
        EnsembleSpec spec;
        spec.kind = cycle_kind(t);
        spec.count = 1 + t % 4;
        spec.dim = (spec.kind != EnsembleKind::fermionic && spec.count <= 2 && (t / 2) % 2 == 0) ? 4 : 2;
        spec.mean_zero = true;
        spec.seed = derive_stream(seed, {0xCEull, static_cast<std::uint64_t>(t)});
        const TensorFamily family = sample_family(spec);
        Rng rng(derive_stream(seed, {0xCFull, static_cast<std::uint64_t>(t)}));
        const AlgElement y = random_element(family.ambient(), rng, t % 2 == 0);
        const int k = static_cast<int>(rng.uniform_index(family.count()));
        const StepFunction mu_y = singular_value_function(y);
        const StepFunction mu_e = singular_value_function(family.conditional_expectation(k, y));
        if (!hl_submajorize(mu_e, mu_y))
            per_trial[t] = "ce-submajorization: mu(E_k(y)) not << mu(y) on " + spec.format();
    });
    for (const auto& msg : per_trial)
        if (!msg.empty()) {
            ++outcome.failures;
            if (outcome.messages.size() < 16) outcome.messages.push_back(msg);
        }
    return outcome;
}

}  // namespace ncfa
