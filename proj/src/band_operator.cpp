#include "bandlab/band_operator.hpp"

#include <algorithm>

#include "bandlab/matrix_norms.hpp"

namespace bandlab {

namespace {

/// sup_n ||a_n|| in the fiber operator norm, from the stored tables
double supOperatorNorm(const Coefficient& a) {
    if (a.latticeDim() == 1) {
        const CoefficientSequence& s = a.seq1();
        double v = 0.0;
        for (const auto& m : s.leftTable()) v = std::max(v, largest_singular_value(m));
        for (const auto& m : s.rightTable()) v = std::max(v, largest_singular_value(m));
        for (const auto& m : s.coreTable()) v = std::max(v, largest_singular_value(m));
        return v;
    }
    double v = 0.0;
    for (const auto& t : a.seq2().terms())
        v += t.axis0.maxEntryNorm() * t.axis1.maxEntryNorm() * largest_singular_value(t.base);
    return v;
}

double bandNormUpperBound(const BandOperator& A) {
    double v = 0.0;
    for (const auto& [k, a] : A.diagonals()) v += supOperatorNorm(a);
    return v;
}

}  // namespace

BandOperator::BandOperator(int latticeDim, int fiberDim) : dim_(latticeDim), d_(fiberDim) {
    if (dim_ < 1 || dim_ > 2) throw std::invalid_argument("BandOperator: lattice dim must be 1 or 2");
    if (d_ < 1) throw std::invalid_argument("BandOperator: fiber dim must be >= 1");
}

BandOperator BandOperator::identity(int latticeDim, int fiberDim) {
    BandOperator A(latticeDim, fiberDim);
    Matrix id = Matrix::Identity(fiberDim, fiberDim);
    Coefficient one = latticeDim == 1 ? Coefficient(CoefficientSequence::constant(id))
                                      : Coefficient(ProductSeq::constant(id));
    A.setDiagonal(MultiIndex::zero(latticeDim), std::move(one));
    return A;
}

BandOperator BandOperator::shiftOp(int latticeDim, int fiberDim, const MultiIndex& k) {
    if (k.dim != latticeDim) throw std::invalid_argument("shiftOp: offset dimension mismatch");
    BandOperator A(latticeDim, fiberDim);
    Matrix id = Matrix::Identity(fiberDim, fiberDim);
    Coefficient one = latticeDim == 1 ? Coefficient(CoefficientSequence::constant(id))
                                      : Coefficient(ProductSeq::constant(id));
    A.setDiagonal(k, std::move(one));
    return A;
}

BandOperator BandOperator::multiplication(Coefficient a) {
    BandOperator A(a.latticeDim(), a.fiberDim());
    A.setDiagonal(MultiIndex::zero(A.dim_), std::move(a));
    return A;
}

BandOperator& BandOperator::setDiagonal(const MultiIndex& offset, Coefficient a) {
    if (offset.dim != dim_) throw std::invalid_argument("setDiagonal: offset dimension mismatch");
    if (a.latticeDim() != dim_ || a.fiberDim() != d_)
        throw std::invalid_argument("setDiagonal: coefficient shape mismatch");
    if (a.isZero())
        diagonals_.erase(offset);
    else
        diagonals_.insert_or_assign(offset, std::move(a));
    return *this;
}

std::int64_t BandOperator::bandwidth() const {
    std::int64_t w = 0;
    for (const auto& [k, a] : diagonals_) w = std::max(w, k.maxNorm());
    return w;
}

BandOperator& BandOperator::setTailBound(double eps) {
    if (eps < 0.0) throw std::invalid_argument("setTailBound: bound must be nonnegative");
    tailBound_ = eps;
    return *this;
}

LatticeVector BandOperator::apply(const LatticeVector& x) const {
    if (x.dim() != dim_ || x.fiberDim() != d_)
        throw std::invalid_argument("BandOperator::apply: dimension mismatch");
    LatticeVector out(dim_, d_);
    for (const auto& [m, v] : x.entries())
        for (const auto& [k, a] : diagonals_) {
            MultiIndex n = m + k;
            out.add(n, Vector(a.value(n) * v));
        }
    return out.pruned(0.0);
}

BandOperator BandOperator::adjoint() const {
    BandOperator B(dim_, d_);
    B.tailBound_ = tailBound_;
    for (const auto& [k, a] : diagonals_)
        B.setDiagonal(-k, a.shifted(k).adjointEntries());
    return B;
}

BandOperator BandOperator::conjugatedByShift(const MultiIndex& h) const {
    BandOperator B(dim_, d_);
    B.tailBound_ = tailBound_;
    for (const auto& [k, a] : diagonals_) B.setDiagonal(k, a.shifted(h));
    return B;
}

BandOperator BandOperator::scaled(Complex s) const {
    BandOperator B(dim_, d_);
    B.tailBound_ = tailBound_ * std::abs(s);
    for (const auto& [k, a] : diagonals_) B.setDiagonal(k, a.scaled(s));
    return B;
}

BandOperator operator+(const BandOperator& a, const BandOperator& b) {
    if (a.dim_ != b.dim_ || a.d_ != b.d_)
        throw std::invalid_argument("BandOperator: shape mismatch in sum");
    BandOperator c(a.dim_, a.d_);
    c.tailBound_ = a.tailBound_ + b.tailBound_;
    c.diagonals_ = a.diagonals_;
    for (const auto& [k, coeff] : b.diagonals_) {
        auto it = c.diagonals_.find(k);
        if (it == c.diagonals_.end())
            c.setDiagonal(k, coeff);
        else
            c.setDiagonal(k, Coefficient::sum(it->second, coeff));
    }
    return c;
}

BandOperator operator-(const BandOperator& a, const BandOperator& b) {
    return a + b.scaled(Complex(-1.0, 0.0));
}

BandOperator operator*(const BandOperator& a, const BandOperator& b) {
    if (a.dim_ != b.dim_ || a.d_ != b.d_)
        throw std::invalid_argument("BandOperator: shape mismatch in composition");
    BandOperator c(a.dim_, a.d_);
    for (const auto& [k, ak] : a.diagonals_)
        for (const auto& [j, bj] : b.diagonals_) {
            // (a^(k) V_k)(b^(j) V_j) = a^(k) (V_k b^(j) V_-k) V_{k+j}
            Coefficient contrib = Coefficient::product(ak, bj.shifted(-k));
            MultiIndex m = k + j;
            auto it = c.diagonals_.find(m);
            if (it == c.diagonals_.end())
                c.setDiagonal(m, std::move(contrib));
            else
                c.setDiagonal(m, Coefficient::sum(it->second, contrib));
        }
    if (a.tailBound_ > 0.0 || b.tailBound_ > 0.0)
        c.tailBound_ = a.tailBound_ * (bandNormUpperBound(b) + b.tailBound_) +
                       bandNormUpperBound(a) * b.tailBound_;
    return c;
}

bool BandOperator::allCoefficientsDeclared() const {
    for (const auto& [k, a] : diagonals_)
        if (!a.declaredAsymptotics()) return false;
    return true;
}

std::int64_t BandOperator::structuralExtent(int axis) const {
    std::int64_t r = 0;
    for (const auto& [k, a] : diagonals_) {
        if (dim_ == 1)
            r = std::max(r, a.seq1().structuralReach());
        else
            r = std::max(r, a.seq2().structuralExtent(axis));
    }
    return r;
}

std::int64_t BandOperator::tailPeriodLcm(int axis, Side s) const {
    std::int64_t p = 1;
    for (const auto& [k, a] : diagonals_) {
        if (dim_ == 1)
            p = lcm64(p, a.seq1().tailPeriod(s));
        else
            p = lcm64(p, a.seq2().tailPeriod(axis, s));
    }
    return p;
}

bool BandOperator::approxEqual(const BandOperator& a, const BandOperator& b, double tol) {
    if (a.dim_ != b.dim_ || a.d_ != b.d_) return false;
    if (a.diagonals_.size() != b.diagonals_.size()) return false;
    for (const auto& [k, coeff] : a.diagonals_) {
        auto it = b.diagonals_.find(k);
        if (it == b.diagonals_.end()) return false;
        if (!Coefficient::approxEqual(coeff, it->second, tol)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Dense compressions

Matrix compression(const BandOperator& A, const std::vector<MultiIndex>& rows,
                   const std::vector<MultiIndex>& cols) {
    const int d = A.fiberDim();
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(rows.size()) * d,
                            static_cast<Eigen::Index>(cols.size()) * d);
    std::map<MultiIndex, std::size_t> rowPos;
    for (std::size_t i = 0; i < rows.size(); ++i) rowPos.emplace(rows[i], i);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [k, a] : A.diagonals()) {
            MultiIndex r = cols[j] + k;
            auto it = rowPos.find(r);
            if (it == rowPos.end()) continue;
            m.block(static_cast<Eigen::Index>(it->second) * d, static_cast<Eigen::Index>(j) * d, d,
                    d) = a.value(r);
        }
    return m;
}

TruncatedMatrix truncate(const BandOperator& A, const Window& rowW, const Window& colW, NormTag t) {
    if (rowW.dim != A.latticeDim() || colW.dim != A.latticeDim())
        throw std::invalid_argument("truncate: window dimension mismatch");
    return TruncatedMatrix{rowW, colW, t, compression(A, rowW.indices(), colW.indices())};
}

double off_band_defect(const BandOperator& A, std::int64_t n, std::int64_t l, NormTag t) {
    if (l < 0 || n <= l) throw std::invalid_argument("off_band_defect: need n > l >= 0");
    const std::int64_t w = A.bandwidth();
    const std::int64_t reach = n - l + w;
    if (reach <= n) return 0.0;  // corner blocks are structurally empty
    const int dim = A.latticeDim();
    std::vector<MultiIndex> inner = Window(dim, n - l).indices();
    std::vector<MultiIndex> ring = annulusIndices(dim, n, reach);
    double corner1 = operator_norm(compression(A, inner, ring), t);
    double corner2 = operator_norm(compression(A, ring, inner), t);
    return corner1 + corner2;
}

namespace {

bool hasFiniteSupportCoefficients(const BandOperator& K) {
    for (const auto& [k, a] : K.diagonals()) {
        if (K.latticeDim() == 1) {
            if (a.seq1().klass() != CoefficientSequence::Class::FiniteSupport) return false;
        } else {
            for (const auto& term : a.seq2().terms())
                if (term.axis0.klass() != CoefficientSequence::Class::FiniteSupport &&
                    term.axis1.klass() != CoefficientSequence::Class::FiniteSupport)
                    return false;
            // row reach must be finite along both axes
            for (const auto& term : a.seq2().terms())
                if (term.axis0.klass() != CoefficientSequence::Class::FiniteSupport ||
                    term.axis1.klass() != CoefficientSequence::Class::FiniteSupport)
                    return false;
        }
    }
    return true;
}

}  // namespace

double p_compact_defect(const BandOperator& K, std::int64_t n, NormTag t) {
    if (n < 0) throw std::invalid_argument("p_compact_defect: n must be >= 0");
    if (!hasFiniteSupportCoefficients(K))
        throw std::invalid_argument("p_compact_defect: all coefficients must have finite support");
    const int dim = K.latticeDim();
    const std::int64_t rowReach =
        std::max(K.structuralExtent(0), dim == 2 ? K.structuralExtent(1) : std::int64_t{0});
    const std::int64_t colReach = rowReach + K.bandwidth();

    double defect = 0.0;
    if (colReach > n) {
        // K Q_n: columns outside the window that still hit nonzero rows
        defect += operator_norm(
            compression(K, Window(dim, rowReach).indices(), annulusIndices(dim, n, colReach)), t);
    }
    if (rowReach > n) {
        // Q_n K: rows outside the window
        defect += operator_norm(
            compression(K, annulusIndices(dim, n, rowReach), Window(dim, colReach).indices()), t);
    }
    return defect;
}

double p_membership_defect(const BandOperator& A, std::int64_t k, std::int64_t n, NormTag t) {
    if (k < 0 || n < 0) throw std::invalid_argument("p_membership_defect: need k, n >= 0");
    const std::int64_t reach = k + A.bandwidth();
    if (reach <= n) return 0.0;
    const int dim = A.latticeDim();
    std::vector<MultiIndex> inner = Window(dim, k).indices();
    std::vector<MultiIndex> ring = annulusIndices(dim, n, reach);
    return operator_norm(compression(A, inner, ring), t) +
           operator_norm(compression(A, ring, inner), t);
}

}  // namespace bandlab
