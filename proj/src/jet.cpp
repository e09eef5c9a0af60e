#include "nullity/jet.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <string>

#include "nullity/error.hpp"

namespace nullity {

namespace {

constexpr int kDim = Jet::kMaxOrder + 1;

struct Triple {
    std::uint16_t i, j, k;
};

struct Layout {
    int max_order = 0;
    std::vector<MultiIndex> index;          // slot -> multi-index
    std::vector<int> degree;                // slot -> total degree
    std::vector<std::size_t> size_by_order; // order -> table size
    std::vector<int> slot_of;               // dense kDim^3 lookup
    std::vector<Triple> triples;            // sorted by deg(i)+deg(j)
    std::vector<std::size_t> triples_by_order;
};

Layout build_layout(int nvars) {
    Layout L;
    int order = 0;
    std::size_t count = 1;
    while (order < Jet::kMaxOrder) {
        // C(n+k+1, k+1)
        std::size_t next = count * static_cast<std::size_t>(nvars + order + 1) / static_cast<std::size_t>(order + 1);
        if (next > Jet::kCapacity) break;
        count = next;
        ++order;
    }
    L.max_order = order;
    L.slot_of.assign(kDim * kDim * kDim, -1);
    for (int d = 0; d <= order; ++d) {
        MultiIndex idx{0, 0, 0};
        // Enumerate exponents of degree d, first variable descending.
        auto emit = [&](const MultiIndex& m) {
            L.slot_of[(m[0] * kDim + m[1]) * kDim + m[2]] = static_cast<int>(L.index.size());
            L.index.push_back(m);
            L.degree.push_back(d);
        };
        if (nvars == 1) {
            idx = {d, 0, 0};
            emit(idx);
        } else if (nvars == 2) {
            for (int a = d; a >= 0; --a) emit({a, d - a, 0});
        } else {
            for (int a = d; a >= 0; --a)
                for (int b = d - a; b >= 0; --b) emit({a, b, d - a - b});
        }
        L.size_by_order.push_back(L.index.size());
    }
    const std::size_t n = L.index.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (L.degree[i] + L.degree[j] > order) continue;
            MultiIndex m{};
            for (int v = 0; v < 3; ++v) m[v] = L.index[i][v] + L.index[j][v];
            const int k = L.slot_of[(m[0] * kDim + m[1]) * kDim + m[2]];
            L.triples.push_back({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j),
                                 static_cast<std::uint16_t>(k)});
        }
    }
    std::stable_sort(L.triples.begin(), L.triples.end(), [&](const Triple& a, const Triple& b) {
        return L.degree[a.i] + L.degree[a.j] < L.degree[b.i] + L.degree[b.j];
    });
    L.triples_by_order.assign(order + 1, 0);
    for (const auto& t : L.triples) {
        const int d = L.degree[t.i] + L.degree[t.j];
        for (int k = d; k <= order; ++k) ++L.triples_by_order[k];
    }
    return L;
}

const Layout& layout(int nvars) {
    static const std::array<Layout, 3> layouts{build_layout(1), build_layout(2), build_layout(3)};
    return layouts[static_cast<std::size_t>(nvars - 1)];
}

void check_shape(int nvars, int order) {
    if (nvars < 1 || nvars > Jet::kMaxVars)
        throw Error(ErrorCode::ShapeMismatch, "jet variable count must be 1..3");
    if (order < 0 || order > layout(nvars).max_order)
        throw Error(ErrorCode::OrderExceeded,
                    "jet order " + std::to_string(order) + " unsupported for " + std::to_string(nvars) + " variables");
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// sum_k coeffs[k] (a - a0)^k
Jet compose_series(const Jet& a, std::span<const double> coeffs) {
    Jet h = a;
    h.coeff(0) = 0.0;
    Jet out = Jet::constant(coeffs[0], a.nvars(), a.order());
    Jet power = Jet::constant(1.0, a.nvars(), a.order());
    for (int k = 1; k <= a.order(); ++k) {
        power *= h;
        out += coeffs[static_cast<std::size_t>(k)] * power;
    }
    return out;
}

} // namespace

std::size_t jet_table_size(int nvars, int order) {
    check_shape(nvars, order);
    return layout(nvars).size_by_order[static_cast<std::size_t>(order)];
}

std::size_t jet_slot(const MultiIndex& idx, int nvars) {
    for (int v = 0; v < 3; ++v)
        if (idx[v] < 0 || idx[v] >= kDim || (v >= nvars && idx[v] != 0))
            throw Error(ErrorCode::OrderExceeded, "multi-index out of range");
    const int s = layout(nvars).slot_of[(idx[0] * kDim + idx[1]) * kDim + idx[2]];
    if (s < 0) throw Error(ErrorCode::OrderExceeded, "multi-index out of range");
    return static_cast<std::size_t>(s);
}

MultiIndex jet_index(std::size_t slot, int nvars) { return layout(nvars).index.at(slot); }

Jet::Jet(int nvars, int order) : nvars_(nvars), order_(order), size_(0) {
    check_shape(nvars, order);
    size_ = layout(nvars).size_by_order[static_cast<std::size_t>(order)];
}

Jet Jet::constant(double value, int nvars, int order) {
    Jet j(nvars, order);
    j.c_[0] = value;
    return j;
}

Jet Jet::variable(int index, double value, int nvars, int order) {
    if (index < 0 || index >= nvars) throw Error(ErrorCode::ShapeMismatch, "variable index out of range");
    Jet j(nvars, order);
    j.c_[0] = value;
    if (order >= 1) {
        MultiIndex m{0, 0, 0};
        m[static_cast<std::size_t>(index)] = 1;
        j.c_[jet_slot(m, nvars)] = 1.0;
    }
    return j;
}

double Jet::taylor(const MultiIndex& idx) const {
    int deg = 0;
    for (int v = 0; v < nvars_; ++v) deg += idx[static_cast<std::size_t>(v)];
    if (deg > order_) throw Error(ErrorCode::OrderExceeded, "derivative order exceeds jet order");
    return c_[jet_slot(idx, nvars_)];
}

double Jet::derivative(const MultiIndex& idx) const {
    double f = 1.0;
    for (int v = 0; v < nvars_; ++v) f *= factorial(idx[static_cast<std::size_t>(v)]);
    return taylor(idx) * f;
}

void Jet::require_same_shape(const Jet& b) const {
    if (nvars_ != b.nvars_ || order_ != b.order_)
        throw Error(ErrorCode::ShapeMismatch, "jets differ in variable count or order");
}

Jet& Jet::operator+=(const Jet& b) {
    require_same_shape(b);
    for (std::size_t k = 0; k < size_; ++k) c_[k] += b.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& b) {
    require_same_shape(b);
    for (std::size_t k = 0; k < size_; ++k) c_[k] -= b.c_[k];
    return *this;
}

Jet& Jet::operator*=(const Jet& b) {
    *this = *this * b;
    return *this;
}

Jet& Jet::operator*=(double s) noexcept {
    for (std::size_t k = 0; k < size_; ++k) c_[k] *= s;
    return *this;
}

Jet Jet::truncated(int order) const {
    if (order > order_) throw Error(ErrorCode::OrderExceeded, "cannot raise jet order by truncation");
    Jet out(nvars_, order);
    std::copy_n(c_.begin(), out.size_, out.c_.begin());
    return out;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }

Jet operator*(const Jet& a, const Jet& b) {
    if (a.nvars() != b.nvars() || a.order() != b.order())
        throw Error(ErrorCode::ShapeMismatch, "jets differ in variable count or order");
    const Layout& L = layout(a.nvars());
    Jet out(a.nvars(), a.order());
    const std::size_t n = L.triples_by_order[static_cast<std::size_t>(a.order())];
    const double* x = a.coeffs().data();
    const double* y = b.coeffs().data();
    for (std::size_t t = 0; t < n; ++t) {
        const Triple& tr = L.triples[t];
        out.coeff(tr.k) += x[tr.i] * y[tr.j];
    }
    return out;
}

Jet operator-(Jet a) { return a *= -1.0; }
Jet operator+(Jet a, double s) { return a += s; }
Jet operator+(double s, Jet a) { return a += s; }
Jet operator-(Jet a, double s) { return a -= s; }
Jet operator-(double s, Jet a) {
    a *= -1.0;
    return a += s;
}
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator/(Jet a, double s) { return a /= s; }
Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

Jet sqrt(const Jet& a, double tol) {
    const double a0 = a.value();
    if (!(a0 > tol)) throw Error(ErrorCode::DegenerateValue, "sqrt of a value not bounded away from zero");
    std::vector<double> c(static_cast<std::size_t>(a.order()) + 1);
    // binom(1/2, k) a0^(1/2 - k)
    double binom = 1.0;
    const double root = std::sqrt(a0);
    double pw = root;
    for (int k = 0; k <= a.order(); ++k) {
        c[static_cast<std::size_t>(k)] = binom * pw;
        binom *= (0.5 - k) / (k + 1);
        pw /= a0;
    }
    return compose_series(a, c);
}

Jet recip(const Jet& a, double tol) {
    const double a0 = a.value();
    if (!(std::abs(a0) > tol)) throw Error(ErrorCode::DegenerateValue, "reciprocal of a value near zero");
    std::vector<double> c(static_cast<std::size_t>(a.order()) + 1);
    double pw = 1.0 / a0;
    for (int k = 0; k <= a.order(); ++k) {
        c[static_cast<std::size_t>(k)] = pw;
        pw *= -1.0 / a0;
    }
    return compose_series(a, c);
}

namespace {

Jet compose_trig(const Jet& a, bool is_sin) {
    const double s = std::sin(a.value());
    const double co = std::cos(a.value());
    // derivatives of sin: sin, cos, -sin, -cos; of cos: cos, -sin, -cos, sin
    const std::array<double, 4> cycle = is_sin ? std::array<double, 4>{s, co, -s, -co}
                                               : std::array<double, 4>{co, -s, -co, s};
    std::vector<double> c(static_cast<std::size_t>(a.order()) + 1);
    for (int k = 0; k <= a.order(); ++k) c[static_cast<std::size_t>(k)] = cycle[k % 4] / factorial(k);
    return compose_series(a, c);
}

} // namespace

Jet sin(const Jet& a) { return compose_trig(a, true); }
Jet cos(const Jet& a) { return compose_trig(a, false); }

Jet differentiate(const Jet& a, int var) {
    if (var < 0 || var >= a.nvars()) throw Error(ErrorCode::ShapeMismatch, "variable index out of range");
    if (a.order() == 0) throw Error(ErrorCode::OrderExceeded, "cannot differentiate an order-0 jet");
    Jet out(a.nvars(), a.order() - 1);
    for (std::size_t s = 0; s < out.size(); ++s) {
        MultiIndex m = jet_index(s, a.nvars());
        m[static_cast<std::size_t>(var)] += 1;
        out.coeff(s) = m[static_cast<std::size_t>(var)] * a.coeff(jet_slot(m, a.nvars()));
    }
    return out;
}

Jet embed(const Jet& a, int nvars, const std::array<int, 3>& var_map) {
    if (nvars < a.nvars()) throw Error(ErrorCode::ShapeMismatch, "cannot embed into fewer variables");
    Jet out(nvars, a.order());
    for (std::size_t s = 0; s < a.size(); ++s) {
        const MultiIndex m = jet_index(s, a.nvars());
        MultiIndex n{0, 0, 0};
        for (int v = 0; v < a.nvars(); ++v) n[static_cast<std::size_t>(var_map[v])] = m[static_cast<std::size_t>(v)];
        out.coeff(jet_slot(n, nvars)) = a.coeff(s);
    }
    return out;
}

Jet dot(std::span<const Jet> a, std::span<const Jet> b) {
    if (a.size() != b.size() || a.empty()) throw Error(ErrorCode::DimensionMismatch, "jet vector sizes differ");
    Jet acc = a[0] * b[0];
    for (std::size_t k = 1; k < a.size(); ++k) acc += a[k] * b[k];
    return acc;
}

std::vector<double> values(std::span<const Jet> v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& j : v) out.push_back(j.value());
    return out;
}

} // namespace nullity
