#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace bandlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Point of the lattice Z^N, N in {1,2}. The unused coordinate stays 0, so
/// arithmetic and comparisons work uniformly for both dimensions.
struct MultiIndex {
    int dim = 1;
    std::array<std::int64_t, 2> c{0, 0};

    static MultiIndex of(std::int64_t i) { return MultiIndex{1, {i, 0}}; }
    static MultiIndex of(std::int64_t i, std::int64_t j) { return MultiIndex{2, {i, j}}; }
    static MultiIndex zero(int dim) { return MultiIndex{dim, {0, 0}}; }

    std::int64_t operator[](int a) const { return c[static_cast<std::size_t>(a)]; }

    /// max-norm |n| used for "tends to infinity" and window membership
    std::int64_t maxNorm() const { return std::max(std::llabs(c[0]), std::llabs(c[1])); }

    MultiIndex operator+(const MultiIndex& o) const {
        requireSameDim(o);
        return MultiIndex{dim, {c[0] + o.c[0], c[1] + o.c[1]}};
    }
    MultiIndex operator-(const MultiIndex& o) const {
        requireSameDim(o);
        return MultiIndex{dim, {c[0] - o.c[0], c[1] - o.c[1]}};
    }
    MultiIndex operator-() const { return MultiIndex{dim, {-c[0], -c[1]}}; }

    bool operator==(const MultiIndex& o) const = default;
    bool operator<(const MultiIndex& o) const {
        if (dim != o.dim) return dim < o.dim;
        if (c[0] != o.c[0]) return c[0] < o.c[0];
        return c[1] < o.c[1];
    }

    void requireSameDim(const MultiIndex& o) const {
        if (dim != o.dim) throw std::invalid_argument("MultiIndex: lattice dimension mismatch");
    }
};

/// Hypercube {-n,...,n}^N. Provides the canonical flattening used by all
/// dense compressions (row-major over coordinates, each in ascending order).
struct Window {
    int dim = 1;
    std::int64_t radius = 0;

    Window() = default;
    Window(int dim_, std::int64_t radius_) : dim(dim_), radius(radius_) {
        if (dim < 1 || dim > 2) throw std::invalid_argument("Window: dim must be 1 or 2");
        if (radius < 0) throw std::invalid_argument("Window: radius must be >= 0");
    }

    std::int64_t sideLength() const { return 2 * radius + 1; }
    std::int64_t size() const { return dim == 1 ? sideLength() : sideLength() * sideLength(); }

    bool contains(const MultiIndex& n) const { return n.dim == dim && n.maxNorm() <= radius; }

    std::int64_t flatIndex(const MultiIndex& n) const {
        if (!contains(n)) throw std::out_of_range("Window::flatIndex: index outside window");
        if (dim == 1) return n.c[0] + radius;
        return (n.c[0] + radius) * sideLength() + (n.c[1] + radius);
    }

    MultiIndex indexAt(std::int64_t flat) const {
        if (flat < 0 || flat >= size()) throw std::out_of_range("Window::indexAt");
        if (dim == 1) return MultiIndex::of(flat - radius);
        return MultiIndex::of(flat / sideLength() - radius, flat % sideLength() - radius);
    }

    std::vector<MultiIndex> indices() const {
        std::vector<MultiIndex> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::int64_t f = 0; f < size(); ++f) out.push_back(indexAt(f));
        return out;
    }
};

/// Indices of the annulus {inner < |i| <= outer} in window flattening order.
std::vector<MultiIndex> annulusIndices(int dim, std::int64_t inner, std::int64_t outer);

/// Norm selector: p in {1,2,inf}; the zeroSubspace flag marks the closed
/// subspace of sequences vanishing at infinity inside l^inf.
struct NormTag {
    enum class P { One, Two, Inf };
    P p = P::Two;
    bool zeroSubspace = false;

    NormTag() = default;
    NormTag(P p_, bool zeroFlag) : p(p_), zeroSubspace(zeroFlag) {
        if (zeroSubspace && p != P::Inf)
            throw std::invalid_argument("NormTag: zero-subspace flag requires p = inf");
    }

    static NormTag p1() { return NormTag(P::One, false); }
    static NormTag p2() { return NormTag(P::Two, false); }
    static NormTag pinf() { return NormTag(P::Inf, false); }
    static NormTag p0() { return NormTag(P::Inf, true); }

    /// dual pairing 1 <-> inf, 2 <-> 2
    NormTag dual() const {
        switch (p) {
            case P::One: return pinf();
            case P::Two: return p2();
            case P::Inf: return p1();
        }
        return p2();
    }

    bool operator==(const NormTag&) const = default;
    const char* name() const {
        switch (p) {
            case P::One: return "1";
            case P::Two: return "2";
            case P::Inf: return zeroSubspace ? "0" : "inf";
        }
        return "?";
    }
};

/// Finitely supported element of l^p(Z^N, C^d); entries live on a sparse map.
class LatticeVector {
public:
    LatticeVector(int dim, int fiberDim) : dim_(dim), d_(fiberDim) {
        if (dim < 1 || dim > 2) throw std::invalid_argument("LatticeVector: dim must be 1 or 2");
        if (fiberDim < 1) throw std::invalid_argument("LatticeVector: fiber dimension must be >= 1");
    }

    /// unit vector e_n with a 1 in the given fiber component
    static LatticeVector basis(const MultiIndex& n, int fiberDim = 1, int component = 0) {
        LatticeVector x(n.dim, fiberDim);
        Vector v = Vector::Zero(fiberDim);
        v(component) = Complex(1.0, 0.0);
        x.set(n, v);
        return x;
    }

    int dim() const { return dim_; }
    int fiberDim() const { return d_; }

    void set(const MultiIndex& n, Vector v) {
        check(n, v);
        entries_[n] = std::move(v);
    }
    void add(const MultiIndex& n, const Vector& v) {
        check(n, v);
        auto it = entries_.find(n);
        if (it == entries_.end())
            entries_.emplace(n, v);
        else
            it->second += v;
    }

    Vector at(const MultiIndex& n) const {
        auto it = entries_.find(n);
        return it == entries_.end() ? Vector(Vector::Zero(d_)) : it->second;
    }

    const std::map<MultiIndex, Vector>& entries() const { return entries_; }

    LatticeVector pruned(double tol = 0.0) const {
        LatticeVector out(dim_, d_);
        for (const auto& [n, v] : entries_)
            if (v.cwiseAbs().maxCoeff() > tol) out.entries_[n] = v;
        return out;
    }

private:
    void check(const MultiIndex& n, const Vector& v) const {
        if (n.dim != dim_) throw std::invalid_argument("LatticeVector: index dimension mismatch");
        if (v.size() != d_) throw std::invalid_argument("LatticeVector: fiber dimension mismatch");
    }

    int dim_;
    int d_;
    std::map<MultiIndex, Vector> entries_;
};

/// P_W x: zero all entries outside the window.
LatticeVector project(const LatticeVector& x, const Window& w);

/// V_k x: entry at n becomes the old entry at n - k. An isometry for every p.
LatticeVector shift(const LatticeVector& x, const MultiIndex& k);

/// p-norm with Euclidean fiber norm on C^d.
double norm(const LatticeVector& x, const NormTag& t);

/// Stack the entries inside a window into one dense vector (window flattening
/// order, d consecutive scalar slots per lattice site).
Vector stack(const LatticeVector& x, const Window& w);
LatticeVector unstack(const Vector& v, const Window& w, int fiberDim);

}  // namespace bandlab
