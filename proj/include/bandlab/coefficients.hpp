#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "bandlab/lattice.hpp"

namespace bandlab {

enum class Side { Left, Right };

/// Structured bounded map Z -> C^{dxd}. Internally every instance is kept in
/// one normal form: a periodic tail on each side (anchored at the global
/// residue, i.e. tail value at n is table[n mod P]) plus a finite core that
/// overrides the interval [coreStart, coreStart + core.size()).
///
/// The user-facing class (constant / periodic / eventually periodic / finite
/// support / tabulated) is derived from the normal form. A tabulated sequence
/// evaluates exactly like the others but carries no declared asymptotic
/// structure, so tail extraction refuses it.
class CoefficientSequence {
public:
    enum class Class { Constant, Periodic, EventuallyPeriodic, FiniteSupport, Tabulated };

    static CoefficientSequence constant(Matrix a);
    static CoefficientSequence constant(Complex a);
    static CoefficientSequence periodic(std::vector<Matrix> table);
    static CoefficientSequence periodicScalars(const std::vector<Complex>& table);
    static CoefficientSequence eventuallyPeriodic(std::vector<Matrix> left, std::vector<Matrix> right,
                                                  std::int64_t coreStart = 0,
                                                  std::vector<Matrix> core = {});
    /// eventually constant scalar: leftValue for n < splitAt, rightValue after
    static CoefficientSequence step(Complex leftValue, Complex rightValue, std::int64_t splitAt = 0);
    static CoefficientSequence finiteSupport(std::int64_t start, std::vector<Matrix> table);
    static CoefficientSequence finiteSupportScalars(std::int64_t start, const std::vector<Complex>& table);
    static CoefficientSequence tabulated(std::int64_t start, std::vector<Matrix> table, Matrix dflt);
    /// tabulated data whose out-of-table values follow periodic fills (the
    /// general form produced by arithmetic on tabulated sequences)
    static CoefficientSequence tabulatedWithTails(std::vector<Matrix> left, std::vector<Matrix> right,
                                                  std::int64_t coreStart, std::vector<Matrix> core);
    static CoefficientSequence zero(int d);

    int fiberDim() const { return d_; }
    Class klass() const;
    static const char* className(Class c);

    Matrix value(std::int64_t n) const;
    Complex scalarValue(std::int64_t n) const;

    /// s'(n) = s(n + t)
    CoefficientSequence shifted(std::int64_t t) const;
    /// entrywise conjugate transpose
    CoefficientSequence adjointEntries() const;
    CoefficientSequence scaled(Complex s) const;

    friend CoefficientSequence operator+(const CoefficientSequence& a, const CoefficientSequence& b);
    /// pointwise matrix product n -> a(n) * b(n)
    static CoefficientSequence product(const CoefficientSequence& a, const CoefficientSequence& b);

    bool declaredAsymptotics() const { return declared_; }
    /// period of the tail table in the normal form (no semantic claim)
    std::int64_t tailPeriodRaw(Side s) const {
        return static_cast<std::int64_t>(s == Side::Left ? left_.size() : right_.size());
    }
    std::int64_t tailPeriod(Side s) const;
    /// the periodic (or constant) sequence the tail agrees with; requires
    /// declared asymptotic structure
    CoefficientSequence tailSequence(Side s) const;

    /// interval [first, last] of the explicit core; nullopt when empty
    std::optional<std::pair<std::int64_t, std::int64_t>> coreSpan() const;
    /// boundary between the tail regimes when the core is empty
    std::int64_t splitPoint() const { return coreStart_; }
    /// radius beyond which the sequence is given by its tails alone
    std::int64_t structuralReach() const;

    bool isZero(double tol = 0.0) const;
    double maxEntryNorm() const;

    static bool approxEqual(const CoefficientSequence& a, const CoefficientSequence& b,
                            double tol = 1e-12);

    /// raw access for serialization
    const std::vector<Matrix>& leftTable() const { return left_; }
    const std::vector<Matrix>& rightTable() const { return right_; }
    const std::vector<Matrix>& coreTable() const { return core_; }
    std::int64_t coreStart() const { return coreStart_; }

private:
    CoefficientSequence() = default;
    void normalize();
    static CoefficientSequence combinePointwise(const CoefficientSequence& a,
                                                const CoefficientSequence& b, bool isProduct);

    Matrix leftValue(std::int64_t n) const;
    Matrix rightValue(std::int64_t n) const;

    int d_ = 1;
    bool declared_ = true;
    std::vector<Matrix> left_{};   // period = left_.size()
    std::vector<Matrix> right_{};  // period = right_.size()
    std::int64_t coreStart_ = 0;
    std::vector<Matrix> core_{};
};

/// nonnegative residue
inline std::int64_t posMod(std::int64_t n, std::int64_t p) {
    std::int64_t r = n % p;
    return r < 0 ? r + p : r;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

/// Coefficient on Z^2 as a finite sum of separable terms
/// sum_i s_i(n0) * t_i(n1) * M_i with scalar axis profiles.
struct ProductTerm {
    CoefficientSequence axis0;  // fiber dim 1
    CoefficientSequence axis1;  // fiber dim 1
    Matrix base;                // d x d
};

class ProductSeq {
public:
    ProductSeq(int d, std::vector<ProductTerm> terms);
    static ProductSeq constant(Matrix a);
    /// profile(n_axis) * base, constant along the other axis
    static ProductSeq axisProfile(int axis, CoefficientSequence profile, Matrix base);

    int fiberDim() const { return d_; }
    const std::vector<ProductTerm>& terms() const { return terms_; }

    Matrix value(const MultiIndex& n) const;
    ProductSeq shifted(const MultiIndex& t) const;
    ProductSeq adjointEntries() const;
    ProductSeq scaled(Complex s) const;

    friend ProductSeq operator+(const ProductSeq& a, const ProductSeq& b);
    static ProductSeq product(const ProductSeq& a, const ProductSeq& b);

    bool declaredAsymptotics() const;
    std::int64_t tailPeriod(int axis, Side s) const;
    std::int64_t structuralExtent(int axis) const;

    /// replace every term's profile on one axis by its tail (with phase) --
    /// the building block of limit operator extraction
    ProductSeq axisLimit(int axis, Side s, std::int64_t phase) const;
    ProductSeq axisShift(int axis, std::int64_t offset) const;

    bool isZero(double tol = 1e-14) const;
    static bool approxEqual(const ProductSeq& a, const ProductSeq& b, double tol = 1e-12);

private:
    static std::vector<std::int64_t> probeAxis(int axis, const ProductSeq& a, const ProductSeq& b);

    int d_ = 1;
    std::vector<ProductTerm> terms_;
};

/// Diagonal coefficient of a band operator: 1-D structured sequence for N=1,
/// separable product form for N=2.
class Coefficient {
public:
    Coefficient(CoefficientSequence s) : v_(std::move(s)) {}
    Coefficient(ProductSeq p) : v_(std::move(p)) {}

    int latticeDim() const { return std::holds_alternative<CoefficientSequence>(v_) ? 1 : 2; }
    int fiberDim() const;

    Matrix value(const MultiIndex& n) const;
    Coefficient shifted(const MultiIndex& t) const;
    Coefficient adjointEntries() const;
    Coefficient scaled(Complex s) const;

    static Coefficient sum(const Coefficient& a, const Coefficient& b);
    static Coefficient product(const Coefficient& a, const Coefficient& b);

    bool declaredAsymptotics() const;
    bool isZero(double tol = 1e-14) const;
    static bool approxEqual(const Coefficient& a, const Coefficient& b, double tol = 1e-12);

    const CoefficientSequence& seq1() const;
    const ProductSeq& seq2() const;

private:
    std::variant<CoefficientSequence, ProductSeq> v_;
};

}  // namespace bandlab
