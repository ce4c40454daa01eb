#pragma once

#include <map>

#include "bandlab/coefficients.hpp"
#include "bandlab/lattice.hpp"

namespace bandlab {

/// Band operator A = sum_k a^(k) V_k over finitely many shift offsets k,
/// acting on l^p(Z^N, C^d) by (Ax)_n = sum_k a^(k)_n x_{n-k}.
///
/// A band-dominated operator is represented by its band part plus a declared
/// off-band tail bound in the operator norm; norm results then hold up to
/// that bound.
class BandOperator {
public:
    BandOperator(int latticeDim, int fiberDim);

    static BandOperator identity(int latticeDim, int fiberDim);
    static BandOperator shiftOp(int latticeDim, int fiberDim, const MultiIndex& k);  // V_k
    static BandOperator multiplication(Coefficient a);                               // aI

    BandOperator& setDiagonal(const MultiIndex& offset, Coefficient a);
    const std::map<MultiIndex, Coefficient>& diagonals() const { return diagonals_; }

    int latticeDim() const { return dim_; }
    int fiberDim() const { return d_; }
    std::int64_t bandwidth() const;

    double tailBound() const { return tailBound_; }
    BandOperator& setTailBound(double eps);

    LatticeVector apply(const LatticeVector& x) const;

    BandOperator adjoint() const;
    /// V_{-h} A V_h
    BandOperator conjugatedByShift(const MultiIndex& h) const;
    BandOperator scaled(Complex s) const;

    friend BandOperator operator+(const BandOperator& a, const BandOperator& b);
    friend BandOperator operator-(const BandOperator& a, const BandOperator& b);
    friend BandOperator operator*(const BandOperator& a, const BandOperator& b);  // composition

    bool allCoefficientsDeclared() const;
    /// largest coordinate reach of any coefficient core along one axis
    std::int64_t structuralExtent(int axis = 0) const;
    std::int64_t tailPeriodLcm(int axis, Side s) const;

    static bool approxEqual(const BandOperator& a, const BandOperator& b, double tol = 1e-12);

private:
    int dim_;
    int d_;
    std::map<MultiIndex, Coefficient> diagonals_;
    double tailBound_ = 0.0;
};

/// Dense compression with explicit row and column index lists; the entry
/// block at (r, c) is a^(r-c)_r when r-c is a diagonal offset, else 0.
Matrix compression(const BandOperator& A, const std::vector<MultiIndex>& rows,
                   const std::vector<MultiIndex>& cols);

/// P_rowW A P_colW as a dense matrix between the stacked window spaces.
struct TruncatedMatrix {
    Window rowWindow;
    Window colWindow;
    NormTag tag;
    Matrix entries;
};

TruncatedMatrix truncate(const BandOperator& A, const Window& rowW, const Window& colW, NormTag t);

/// ||P_{n-l} A Q_n|| + ||Q_n A P_{n-l}||, evaluated exactly on the
/// bandwidth-dilated windows. Zero for every band operator once l reaches the
/// bandwidth; a declared tail bound adds up to 2*tailBound() on top.
double off_band_defect(const BandOperator& A, std::int64_t n, std::int64_t l, NormTag t);

/// ||K Q_n|| + ||Q_n K|| for an operator with finite-support coefficients.
/// Hits exactly zero once n exceeds support reach plus bandwidth.
double p_compact_defect(const BandOperator& K, std::int64_t n, NormTag t);

/// ||P_k A Q_n|| + ||Q_n A P_k||: the membership diagnostic that must decay
/// in n for every fixed k.
double p_membership_defect(const BandOperator& A, std::int64_t k, std::int64_t n, NormTag t);

}  // namespace bandlab
