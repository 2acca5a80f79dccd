#include "ncfa/independence.hpp"

#include <cmath>
#include <stdexcept>

namespace ncfa {

StepFunction DirectSumElement::mu() const {
    std::vector<StepFunction> parts;
    parts.reserve(summands.size());
    for (const auto& s : summands) parts.push_back(singular_value_function(s));
    return mu_of_direct_sum(parts);
}

DirectSumElement make_direct_sum(std::vector<AlgElement> summands) {
    if (summands.empty()) throw std::invalid_argument("make_direct_sum: empty summand list");
    for (const auto& s : summands)
        if (s.algebra() != summands.front().algebra())
            throw std::invalid_argument("make_direct_sum: summands must share one algebra");
    DirectSumElement d;
    d.summands = std::move(summands);
    return d;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim(), nb = b.dim();
    ComplexMatrix c(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            const cplx v = a(i, j);
            if (v == cplx(0.0, 0.0)) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) c(i * nb + k, j * nb + l) = v * b(k, l);
        }
    return c;
}

std::vector<AlgElement> fermionic_generators(int K) {
    if (K < 1) throw std::invalid_argument("fermionic_generators: K must be >= 1");
    if (K > TensorFamily::kMaxFactors) throw budget_error("fermionic_generators: factor budget exceeded");
    ComplexMatrix sx(2), sz(2);
    sx(0, 1) = 1.0;
    sx(1, 0) = 1.0;
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    const int dim = 1 << K;
    const TracialAlgebra ambient = TracialAlgebra::probability_matrix_algebra(dim);
    std::vector<AlgElement> out;
    out.reserve(K);
    for (int k = 0; k < K; ++k) {
        ComplexMatrix m(1);
        m(0, 0) = 1.0;
        for (int slot = 0; slot < K; ++slot) {
            if (slot < k)
                m = kron(m, sz);
            else if (slot == k)
                m = kron(m, sx);
            else
                m = kron(m, ComplexMatrix::identity(2));
        }
        out.emplace_back(ambient, std::vector<ComplexMatrix>{std::move(m)}, true);
    }
    return out;
}

void TensorFamily::check_index(int k) const {
    if (k < 0 || k >= count_) throw std::out_of_range("TensorFamily: factor index out of range");
}

TensorFamily TensorFamily::build(std::vector<TensorFactor> factors) {
    if (factors.empty()) throw std::invalid_argument("TensorFamily::build: empty factor list");
    if (static_cast<int>(factors.size()) > kMaxFactors)
        throw budget_error("TensorFamily::build: more than " + std::to_string(kMaxFactors) + " factors");
    long long dim = 1;
    for (const auto& f : factors) {
        if (f.algebra.block_count() != 1)
            throw std::invalid_argument("TensorFamily::build: factor algebras must be single-block");
        if (!f.algebra.is_probability_space())
            throw std::invalid_argument("TensorFamily::build: factor algebras must be probability spaces");
        if (f.element.algebra() != f.algebra)
            throw std::invalid_argument("TensorFamily::build: element/algebra mismatch");
        if (!is_hermitian(f.element)) throw std::invalid_argument("TensorFamily::build: factor elements must be Hermitian");
        dim *= f.algebra.blocks()[0].dim;
        if (dim > kMaxAmbientDim) throw budget_error("TensorFamily::build: ambient dimension budget exceeded");
    }

    TensorFamily fam;
    fam.mode_ = Mode::tensor;
    fam.count_ = static_cast<int>(factors.size());
    fam.ambient_dim_ = static_cast<int>(dim);
    fam.factors_ = std::move(factors);
    fam.left_dim_.resize(fam.count_);
    fam.right_dim_.resize(fam.count_);
    double weight = 1.0;
    for (int k = 0; k < fam.count_; ++k) weight *= fam.factors_[k].algebra.blocks()[0].weight;
    fam.ambient_ = TracialAlgebra::matrix_algebra(fam.ambient_dim_, weight);
    int left = 1;
    for (int k = 0; k < fam.count_; ++k) {
        fam.left_dim_[k] = left;
        left *= fam.factors_[k].algebra.blocks()[0].dim;
    }
    int right = 1;
    for (int k = fam.count_ - 1; k >= 0; --k) {
        fam.right_dim_[k] = right;
        right *= fam.factors_[k].algebra.blocks()[0].dim;
    }

    if (fam.ambient_dim_ <= kFullCheckDim) {
        fam.cached_embedded_.reserve(fam.count_);
        for (int k = 0; k < fam.count_; ++k) fam.cached_embedded_.push_back(fam.materialize_embedded(k));
    }
    fam.verify_construction();
    return fam;
}

TensorFamily TensorFamily::fermionic(const std::vector<double>& linear, const std::vector<double>& constant) {
    const int K = static_cast<int>(linear.size());
    if (K < 1) throw std::invalid_argument("TensorFamily::fermionic: empty coefficient list");
    if (!constant.empty() && static_cast<int>(constant.size()) != K)
        throw std::invalid_argument("TensorFamily::fermionic: coefficient length mismatch");
    TensorFamily fam;
    fam.mode_ = Mode::fermionic;
    fam.count_ = K;
    fam.generators_ = fermionic_generators(K);
    fam.ambient_ = fam.generators_.front().algebra();
    fam.ambient_dim_ = fam.ambient_.blocks()[0].dim;
    fam.lin_coeff_ = linear;
    fam.const_coeff_ = constant.empty() ? std::vector<double>(K, 0.0) : constant;
    fam.cached_embedded_.reserve(K);
    for (int k = 0; k < K; ++k) fam.cached_embedded_.push_back(fam.materialize_embedded(k));
    fam.verify_construction();
    return fam;
}

AlgElement TensorFamily::materialize_embedded(int k) const {
    if (mode_ == Mode::fermionic) {
        AlgElement x = scale(cplx(lin_coeff_[k], 0.0), generators_[k]);
        if (const_coeff_[k] != 0.0) x = add(x, scale(cplx(const_coeff_[k], 0.0), AlgElement::identity(ambient_)));
        return x;
    }
    const int L = left_dim_[k], R = right_dim_[k];
    const int n = factors_[k].algebra.blocks()[0].dim;
    const ComplexMatrix& x = factors_[k].element.block(0);
    ComplexMatrix emb(ambient_dim_);
    for (int a = 0; a < L; ++a)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const cplx v = x(i, j);
                if (v == cplx(0.0, 0.0)) continue;
                for (int r = 0; r < R; ++r) emb((a * n + i) * R + r, (a * n + j) * R + r) = v;
            }
    return AlgElement(ambient_, {std::move(emb)}, true);
}

void TensorFamily::verify_construction() const {
    if (mode_ == Mode::fermionic) {
        const AlgElement one = AlgElement::identity(ambient_);
        for (int k = 0; k < count_; ++k) {
            if (std::abs(trace(generators_[k])) > 1e-12)
                throw std::logic_error("TensorFamily: fermionic generator is not trace-free");
            if ((multiply(generators_[k], generators_[k]) - one).max_abs_entry() > 1e-12)
                throw std::logic_error("TensorFamily: fermionic generator does not square to 1");
        }
        for (int j = 0; j < count_; ++j)
            for (int k = j + 1; k < count_; ++k) {
                const AlgElement anti =
                    add(multiply(generators_[j], generators_[k]), multiply(generators_[k], generators_[j]));
                if (anti.max_abs_entry() > 1e-12)
                    throw std::logic_error("TensorFamily: fermionic generators do not anti-commute");
            }
    }
    if (cached_embedded_.empty()) return;
    for (int k = 0; k < count_; ++k) {
        const cplx tk = factor_trace(k);
        if (std::abs(trace(cached_embedded_[k]) - tk) > 1e-10 * (1.0 + std::abs(tk)))
            throw std::logic_error("TensorFamily: embedding does not preserve the factor trace");
    }
    for (int j = 0; j < count_; ++j)
        for (int k = j + 1; k < count_; ++k) {
            const cplx lhs = trace_of_product(cached_embedded_[j], cached_embedded_[k]);
            const cplx rhs = factor_trace(j) * factor_trace(k);
            if (std::abs(lhs - rhs) > 1e-10 * (1.0 + std::abs(rhs)))
                throw std::logic_error("TensorFamily: pairwise independence check failed");
        }
}

const TensorFactor& TensorFamily::factor(int k) const {
    check_index(k);
    if (mode_ != Mode::tensor) throw std::logic_error("TensorFamily::factor: fermionic families have no slot factors");
    return factors_[k];
}

cplx TensorFamily::factor_trace(int k) const {
    check_index(k);
    if (mode_ == Mode::fermionic) return {const_coeff_[k], 0.0};
    return trace(factors_[k].element);
}

StepFunction TensorFamily::factor_mu(int k) const {
    check_index(k);
    if (mode_ == Mode::fermionic) return singular_value_function(embedded(k));
    return singular_value_function(factors_[k].element);
}

double TensorFamily::fermionic_linear(int k) const {
    check_index(k);
    if (mode_ != Mode::fermionic) throw std::logic_error("TensorFamily::fermionic_linear: not a fermionic family");
    return lin_coeff_[k];
}

double TensorFamily::fermionic_constant(int k) const {
    check_index(k);
    if (mode_ != Mode::fermionic) throw std::logic_error("TensorFamily::fermionic_constant: not a fermionic family");
    return const_coeff_[k];
}

const AlgElement& TensorFamily::fermionic_generator(int k) const {
    check_index(k);
    if (mode_ != Mode::fermionic) throw std::logic_error("TensorFamily::fermionic_generator: not a fermionic family");
    return generators_[k];
}

AlgElement TensorFamily::embedded(int k) const {
    check_index(k);
    if (!cached_embedded_.empty()) return cached_embedded_[k];
    return materialize_embedded(k);
}

AlgElement TensorFamily::embedded_sum() const {
    if (mode_ == Mode::fermionic) {
        AlgElement acc = AlgElement::zero(ambient_);
        for (int k = 0; k < count_; ++k) acc = add(acc, embedded(k));
        return acc;
    }
    // Conjugate entry pairs accumulate in the same order, so the sum of
    // Hermitian slot contributions is exactly Hermitian; no symmetrize pass.
    ComplexMatrix acc(ambient_dim_);
    for (int k = 0; k < count_; ++k) {
        const int L = left_dim_[k], R = right_dim_[k];
        const int n = factors_[k].algebra.blocks()[0].dim;
        const ComplexMatrix& x = factors_[k].element.block(0);
        for (int a = 0; a < L; ++a)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const cplx v = x(i, j);
                    if (v == cplx(0.0, 0.0)) continue;
                    for (int r = 0; r < R; ++r) acc((a * n + i) * R + r, (a * n + j) * R + r) += v;
                }
    }
    return AlgElement(ambient_, {std::move(acc)}, true);
}

DirectSumElement TensorFamily::direct_sum() const {
    std::vector<AlgElement> summands;
    summands.reserve(count_);
    for (int k = 0; k < count_; ++k) summands.push_back(embedded(k));
    return make_direct_sum(std::move(summands));
}

StepFunction TensorFamily::direct_sum_mu() const {
    std::vector<StepFunction> parts;
    parts.reserve(count_);
    for (int k = 0; k < count_; ++k) parts.push_back(factor_mu(k));
    return mu_of_direct_sum(parts);
}

AlgElement TensorFamily::conditional_expectation(int k, const AlgElement& y) const {
    check_index(k);
    if (y.algebra() != ambient_) throw std::invalid_argument("conditional_expectation: y is not in the ambient algebra");
    if (mode_ == Mode::fermionic) {
        const cplx t0 = trace(y);
        const cplx t1 = trace_of_product(generators_[k], y);
        AlgElement out = add(scale(t0, AlgElement::identity(ambient_)), scale(t1, generators_[k]));
        if (y.hermitian_flag()) {
            std::vector<ComplexMatrix> blocks = out.blocks();
            blocks[0].symmetrize();
            return AlgElement(ambient_, std::move(blocks), true);
        }
        return out;
    }
    const int L = left_dim_[k], R = right_dim_[k];
    const int n = factors_[k].algebra.blocks()[0].dim;
    const ComplexMatrix& yb = y.block(0);
    ComplexMatrix small(n);
    const double norml = 1.0 / (static_cast<double>(L) * R);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int a = 0; a < L; ++a)
                for (int r = 0; r < R; ++r) s += yb((a * n + i) * R + r, (a * n + j) * R + r);
            small(i, j) = s * norml;
        }
    if (y.hermitian_flag()) small.symmetrize();
    ComplexMatrix emb(ambient_dim_);
    for (int a = 0; a < L; ++a)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const cplx v = small(i, j);
                if (v == cplx(0.0, 0.0)) continue;
                for (int r = 0; r < R; ++r) emb((a * n + i) * R + r, (a * n + j) * R + r) = v;
            }
    return AlgElement(ambient_, {std::move(emb)}, y.hermitian_flag());
}

DirectSumElement rademacher_expand(const TensorFamily& family) {
    const int K = family.count();
    if (K > 12) throw budget_error("rademacher_expand: sign enumeration cap is K <= 12");
    const int D = family.ambient_dim();
    const std::uint64_t patterns = 1ull << K;
    if (patterns * static_cast<std::uint64_t>(D) * D > (1ull << 26))
        throw budget_error("rademacher_expand: pattern storage budget exceeded");
    const double w = family.ambient().blocks()[0].weight * std::ldexp(1.0, -K);
    const TracialAlgebra block_alg = TracialAlgebra::matrix_algebra(D, w);
    std::vector<AlgElement> embedded;
    embedded.reserve(K);
    for (int k = 0; k < K; ++k) embedded.push_back(family.embedded(k));
    DirectSumElement out;
    out.summands.reserve(patterns);
    for (std::uint64_t s = 0; s < patterns; ++s) {
        ComplexMatrix m(D);
        for (int k = 0; k < K; ++k) {
            const double eps = ((s >> k) & 1u) ? -1.0 : 1.0;
            const auto& xb = embedded[k].block(0).data();
            for (std::size_t idx = 0; idx < xb.size(); ++idx) m.data()[idx] += eps * xb[idx];
        }
        m.symmetrize();
        out.summands.emplace_back(block_alg, std::vector<ComplexMatrix>{std::move(m)}, true);
    }
    return out;
}

EnsembleKind parse_kind(const std::string& name) {
    if (name == "classical") return EnsembleKind::classical;
    if (name == "gue_like") return EnsembleKind::gue_like;
    if (name == "fermionic") return EnsembleKind::fermionic;
    if (name == "rank_one") return EnsembleKind::rank_one;
    throw std::invalid_argument("unknown ensemble kind '" + name + "'");
}

std::string kind_name(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::classical:
            return "classical";
        case EnsembleKind::gue_like:
            return "gue_like";
        case EnsembleKind::fermionic:
            return "fermionic";
        case EnsembleKind::rank_one:
            return "rank_one";
    }
    return {};
}

std::string EnsembleSpec::format() const {
    std::string s = kind_name(kind) + ":K=" + std::to_string(count) + ",n=" + std::to_string(dim);
    if (!mean_zero) s += ",mean_zero=0";
    return s;
}

EnsembleSpec EnsembleSpec::parse(const std::string& text) {
    EnsembleSpec spec;
    const auto colon = text.find(':');
    spec.kind = parse_kind(text.substr(0, colon));
    if (colon == std::string::npos) return spec;
    std::size_t pos = colon + 1;
    while (pos < text.size()) {
        auto next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string item = text.substr(pos, next - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("ensemble descriptor: expected key=value in '" + item + "'");
        const std::string key = item.substr(0, eq);
        const int value = std::stoi(item.substr(eq + 1));
        if (key == "K")
            spec.count = value;
        else if (key == "n")
            spec.dim = value;
        else if (key == "mean_zero")
            spec.mean_zero = value != 0;
        else
            throw std::invalid_argument("ensemble descriptor: unknown key '" + key + "'");
        pos = next + 1;
    }
    if (spec.count < 1 || spec.dim < 1) throw std::invalid_argument("ensemble descriptor: K and n must be >= 1");
    return spec;
}

namespace {

AlgElement subtract_trace(const AlgElement& x) {
    const double t = trace(x).real();
    return sub(x, scale(cplx(t, 0.0), AlgElement::identity(x.algebra())));
}

}  // namespace

AlgElement random_element(const TracialAlgebra& algebra, Rng& rng, bool hermitian) {
    std::vector<ComplexMatrix> blocks;
    for (const auto& b : algebra.blocks()) {
        ComplexMatrix m(b.dim);
        for (auto& v : m.data()) v = rng.complex_gaussian();
        if (hermitian) m.symmetrize();
        blocks.push_back(std::move(m));
    }
    return AlgElement(algebra, std::move(blocks), hermitian);
}

TensorFamily sample_family(const EnsembleSpec& spec) {
    Rng rng(derive_stream(spec.seed, {static_cast<std::uint64_t>(spec.kind), static_cast<std::uint64_t>(spec.count),
                                      static_cast<std::uint64_t>(spec.dim)}));
    switch (spec.kind) {
        case EnsembleKind::classical: {
            std::vector<TensorFactor> factors;
            for (int k = 0; k < spec.count; ++k) {
                const TracialAlgebra alg = TracialAlgebra::probability_matrix_algebra(spec.dim);
                std::vector<double> entries(spec.dim);
                for (double& e : entries) e = rng.gaussian();
                AlgElement x = AlgElement::diagonal(alg, entries);
                if (spec.mean_zero) x = subtract_trace(x);
                factors.push_back({alg, std::move(x)});
            }
            return TensorFamily::build(std::move(factors));
        }
        case EnsembleKind::gue_like: {
            std::vector<TensorFactor> factors;
            for (int k = 0; k < spec.count; ++k) {
                const TracialAlgebra alg = TracialAlgebra::probability_matrix_algebra(spec.dim);
                AlgElement x = random_element(alg, rng, true);
                if (spec.mean_zero) x = subtract_trace(x);
                factors.push_back({alg, std::move(x)});
            }
            return TensorFamily::build(std::move(factors));
        }
        case EnsembleKind::fermionic: {
            std::vector<double> lin(spec.count), cst(spec.count, 0.0);
            for (int k = 0; k < spec.count; ++k) {
                lin[k] = rng.gaussian();
                if (!spec.mean_zero) cst[k] = rng.gaussian();
            }
            return TensorFamily::fermionic(lin, cst);
        }
        case EnsembleKind::rank_one:
            throw std::invalid_argument("sample_family: rank_one is not an independent family; use rank_one_family");
    }
    throw std::invalid_argument("sample_family: unknown kind");
}

std::vector<AlgElement> rank_one_family(int n, bool mean_zero) {
    if (n < 1) throw std::invalid_argument("rank_one_family: n must be >= 1");
    const TracialAlgebra alg = TracialAlgebra::probability_matrix_algebra(n);
    std::vector<AlgElement> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        AlgElement x = AlgElement::matrix_unit(alg, 0, k, 0);
        if (mean_zero) x = sub(x, scale(trace(x), AlgElement::identity(alg)));
        out.push_back(std::move(x));
    }
    return out;
}

Ensemble sample_ensemble(const EnsembleSpec& spec) {
    if (spec.kind == EnsembleKind::rank_one) return rank_one_family(spec.dim, spec.mean_zero);
    return sample_family(spec);
}

TensorFamily positive_variant(const TensorFamily& family) {
    if (family.mode() == TensorFamily::Mode::fermionic) {
        std::vector<double> lin(family.count()), cst(family.count());
        for (int k = 0; k < family.count(); ++k) {
            const double a = std::abs(family.fermionic_constant(k));
            const double b = std::abs(family.fermionic_linear(k));
            lin[k] = 0.5 * b;
            cst[k] = 0.5 * (a + b);
        }
        return TensorFamily::fermionic(lin, cst);
    }
    std::vector<TensorFactor> factors;
    factors.reserve(family.count());
    for (int k = 0; k < family.count(); ++k)
        factors.push_back({family.factor(k).algebra, abs_op(family.factor(k).element)});
    return TensorFamily::build(std::move(factors));
}

}  // namespace ncfa
