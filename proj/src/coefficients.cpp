#include "bandlab/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace bandlab {

namespace {

bool matEq(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return a.size() == 0 || (a - b).cwiseAbs().maxCoeff() == 0.0;
}

bool matNear(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return a.size() == 0 || (a - b).cwiseAbs().maxCoeff() <= tol;
}

bool matZero(const Matrix& a, double tol) { return a.size() == 0 || a.cwiseAbs().maxCoeff() <= tol; }

void requireSquare(const std::vector<Matrix>& table, int d, const char* what) {
    for (const auto& m : table)
        if (m.rows() != d || m.cols() != d)
            throw std::invalid_argument(std::string(what) + ": entries must be d x d");
}

std::vector<Matrix> minimalTable(const std::vector<Matrix>& table) {
    const std::int64_t p = static_cast<std::int64_t>(table.size());
    for (std::int64_t q = 1; q < p; ++q) {
        if (p % q != 0) continue;
        bool ok = true;
        for (std::int64_t i = 0; i < p && ok; ++i)
            ok = matEq(table[static_cast<std::size_t>(i)], table[static_cast<std::size_t>(i % q)]);
        if (ok) return std::vector<Matrix>(table.begin(), table.begin() + q);
    }
    return table;
}

std::vector<Matrix> scalarTable(const std::vector<Complex>& v) {
    std::vector<Matrix> out;
    out.reserve(v.size());
    for (Complex z : v) {
        Matrix m(1, 1);
        m(0, 0) = z;
        out.push_back(m);
    }
    return out;
}

}  // namespace

CoefficientSequence CoefficientSequence::constant(Matrix a) {
    if (a.rows() != a.cols() || a.rows() < 1)
        throw std::invalid_argument("CoefficientSequence::constant: need a square matrix");
    CoefficientSequence s;
    s.d_ = static_cast<int>(a.rows());
    s.left_ = {a};
    s.right_ = {std::move(a)};
    s.normalize();
    return s;
}

CoefficientSequence CoefficientSequence::constant(Complex a) {
    Matrix m(1, 1);
    m(0, 0) = a;
    return constant(std::move(m));
}

CoefficientSequence CoefficientSequence::periodic(std::vector<Matrix> table) {
    if (table.empty()) throw std::invalid_argument("CoefficientSequence::periodic: empty table");
    CoefficientSequence s;
    s.d_ = static_cast<int>(table.front().rows());
    requireSquare(table, s.d_, "periodic");
    s.left_ = table;
    s.right_ = std::move(table);
    s.normalize();
    return s;
}

CoefficientSequence CoefficientSequence::periodicScalars(const std::vector<Complex>& table) {
    return periodic(scalarTable(table));
}

CoefficientSequence CoefficientSequence::eventuallyPeriodic(std::vector<Matrix> left,
                                                            std::vector<Matrix> right,
                                                            std::int64_t coreStart,
                                                            std::vector<Matrix> core) {
    if (left.empty() || right.empty())
        throw std::invalid_argument("eventuallyPeriodic: tails must be nonempty");
    CoefficientSequence s;
    s.d_ = static_cast<int>(left.front().rows());
    requireSquare(left, s.d_, "eventuallyPeriodic");
    requireSquare(right, s.d_, "eventuallyPeriodic");
    requireSquare(core, s.d_, "eventuallyPeriodic");
    s.left_ = std::move(left);
    s.right_ = std::move(right);
    s.coreStart_ = coreStart;
    s.core_ = std::move(core);
    s.normalize();
    return s;
}

CoefficientSequence CoefficientSequence::step(Complex leftValue, Complex rightValue,
                                              std::int64_t splitAt) {
    Matrix l(1, 1), r(1, 1);
    l(0, 0) = leftValue;
    r(0, 0) = rightValue;
    return eventuallyPeriodic({l}, {r}, splitAt, {});
}

CoefficientSequence CoefficientSequence::finiteSupport(std::int64_t start, std::vector<Matrix> table) {
    if (table.empty()) throw std::invalid_argument("finiteSupport: empty table");
    const int d = static_cast<int>(table.front().rows());
    Matrix z = Matrix::Zero(d, d);
    return eventuallyPeriodic({z}, {z}, start, std::move(table));
}

CoefficientSequence CoefficientSequence::finiteSupportScalars(std::int64_t start,
                                                              const std::vector<Complex>& table) {
    return finiteSupport(start, scalarTable(table));
}

CoefficientSequence CoefficientSequence::tabulated(std::int64_t start, std::vector<Matrix> table,
                                                   Matrix dflt) {
    if (dflt.rows() != dflt.cols() || dflt.rows() < 1)
        throw std::invalid_argument("tabulated: default must be square");
    CoefficientSequence s;
    s.d_ = static_cast<int>(dflt.rows());
    requireSquare(table, s.d_, "tabulated");
    s.declared_ = false;
    s.left_ = {dflt};
    s.right_ = {std::move(dflt)};
    s.coreStart_ = start;
    s.core_ = std::move(table);
    s.normalize();
    return s;
}

CoefficientSequence CoefficientSequence::tabulatedWithTails(std::vector<Matrix> left,
                                                            std::vector<Matrix> right,
                                                            std::int64_t coreStart,
                                                            std::vector<Matrix> core) {
    if (left.empty() || right.empty())
        throw std::invalid_argument("tabulatedWithTails: fill tables must be nonempty");
    CoefficientSequence s;
    s.d_ = static_cast<int>(left.front().rows());
    requireSquare(left, s.d_, "tabulatedWithTails");
    requireSquare(right, s.d_, "tabulatedWithTails");
    requireSquare(core, s.d_, "tabulatedWithTails");
    s.declared_ = false;
    s.left_ = std::move(left);
    s.right_ = std::move(right);
    s.coreStart_ = coreStart;
    s.core_ = std::move(core);
    s.normalize();
    return s;
}

CoefficientSequence CoefficientSequence::zero(int d) {
    return constant(Matrix(Matrix::Zero(d, d)));
}

Matrix CoefficientSequence::leftValue(std::int64_t n) const {
    return left_[static_cast<std::size_t>(posMod(n, static_cast<std::int64_t>(left_.size())))];
}

Matrix CoefficientSequence::rightValue(std::int64_t n) const {
    return right_[static_cast<std::size_t>(posMod(n, static_cast<std::int64_t>(right_.size())))];
}

void CoefficientSequence::normalize() {
    // absorb core entries that already agree with the adjacent tail
    while (!core_.empty() && matEq(core_.front(), leftValue(coreStart_))) {
        core_.erase(core_.begin());
        ++coreStart_;
    }
    while (!core_.empty() &&
           matEq(core_.back(), rightValue(coreStart_ + static_cast<std::int64_t>(core_.size()) - 1))) {
        core_.pop_back();
    }
    left_ = minimalTable(left_);
    right_ = minimalTable(right_);
    if (core_.empty() && left_.size() == right_.size()) {
        bool same = true;
        for (std::size_t i = 0; i < left_.size() && same; ++i) same = matEq(left_[i], right_[i]);
        if (same) coreStart_ = 0;
    }
}

CoefficientSequence::Class CoefficientSequence::klass() const {
    if (!declared_) return Class::Tabulated;
    bool tailsSame = left_.size() == right_.size();
    for (std::size_t i = 0; tailsSame && i < left_.size(); ++i) tailsSame = matEq(left_[i], right_[i]);
    if (core_.empty() && tailsSame) return left_.size() == 1 ? Class::Constant : Class::Periodic;
    if (left_.size() == 1 && right_.size() == 1 && matZero(left_[0], 0.0) && matZero(right_[0], 0.0))
        return Class::FiniteSupport;
    return Class::EventuallyPeriodic;
}

const char* CoefficientSequence::className(Class c) {
    switch (c) {
        case Class::Constant: return "constant";
        case Class::Periodic: return "periodic";
        case Class::EventuallyPeriodic: return "eventuallyPeriodic";
        case Class::FiniteSupport: return "finiteSupport";
        case Class::Tabulated: return "tabulated";
    }
    return "?";
}

Matrix CoefficientSequence::value(std::int64_t n) const {
    if (n < coreStart_) return leftValue(n);
    const std::int64_t off = n - coreStart_;
    if (off < static_cast<std::int64_t>(core_.size())) return core_[static_cast<std::size_t>(off)];
    return rightValue(n);
}

Complex CoefficientSequence::scalarValue(std::int64_t n) const {
    if (d_ != 1) throw std::logic_error("scalarValue: fiber dimension is not 1");
    return value(n)(0, 0);
}

CoefficientSequence CoefficientSequence::shifted(std::int64_t t) const {
    CoefficientSequence s;
    s.d_ = d_;
    s.declared_ = declared_;
    s.left_.reserve(left_.size());
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(left_.size()); ++i)
        s.left_.push_back(leftValue(i + t));
    s.right_.reserve(right_.size());
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(right_.size()); ++i)
        s.right_.push_back(rightValue(i + t));
    s.coreStart_ = coreStart_ - t;
    s.core_ = core_;
    s.normalize();
    return s;
}

CoefficientSequence CoefficientSequence::adjointEntries() const {
    CoefficientSequence s = *this;
    for (auto& m : s.left_) m = m.adjoint().eval();
    for (auto& m : s.right_) m = m.adjoint().eval();
    for (auto& m : s.core_) m = m.adjoint().eval();
    s.normalize();
    return s;
}

CoefficientSequence CoefficientSequence::scaled(Complex z) const {
    CoefficientSequence s = *this;
    for (auto& m : s.left_) m *= z;
    for (auto& m : s.right_) m *= z;
    for (auto& m : s.core_) m *= z;
    s.normalize();
    return s;
}

CoefficientSequence CoefficientSequence::combinePointwise(const CoefficientSequence& a,
                                                          const CoefficientSequence& b,
                                                          bool isProduct) {
    if (a.d_ != b.d_)
        throw std::invalid_argument("CoefficientSequence: fiber dimension mismatch");
    auto op = [isProduct](const Matrix& x, const Matrix& y) -> Matrix {
        return isProduct ? Matrix(x * y) : Matrix(x + y);
    };

    // the combined core must cover both cores and both split points
    const std::int64_t lo = std::min(a.coreStart_, b.coreStart_);
    const std::int64_t hi = std::max(a.coreStart_ + static_cast<std::int64_t>(a.core_.size()),
                                     b.coreStart_ + static_cast<std::int64_t>(b.core_.size()));

    CoefficientSequence s;
    s.d_ = a.d_;
    s.declared_ = a.declared_ && b.declared_;
    const std::int64_t lp = lcm64(a.tailPeriodRaw(Side::Left), b.tailPeriodRaw(Side::Left));
    const std::int64_t rp = lcm64(a.tailPeriodRaw(Side::Right), b.tailPeriodRaw(Side::Right));
    s.left_.reserve(static_cast<std::size_t>(lp));
    for (std::int64_t i = 0; i < lp; ++i) s.left_.push_back(op(a.leftValue(i), b.leftValue(i)));
    s.right_.reserve(static_cast<std::size_t>(rp));
    for (std::int64_t i = 0; i < rp; ++i) s.right_.push_back(op(a.rightValue(i), b.rightValue(i)));
    s.coreStart_ = lo;
    s.core_.reserve(static_cast<std::size_t>(hi - lo));
    for (std::int64_t n = lo; n < hi; ++n) s.core_.push_back(op(a.value(n), b.value(n)));
    s.normalize();
    return s;
}

CoefficientSequence operator+(const CoefficientSequence& a, const CoefficientSequence& b) {
    return CoefficientSequence::combinePointwise(a, b, /*isProduct=*/false);
}

CoefficientSequence CoefficientSequence::product(const CoefficientSequence& a,
                                                 const CoefficientSequence& b) {
    return combinePointwise(a, b, /*isProduct=*/true);
}

std::int64_t CoefficientSequence::tailPeriod(Side s) const {
    if (!declared_)
        throw std::domain_error("tailPeriod: tabulated coefficient has no declared asymptotics");
    return tailPeriodRaw(s);
}

CoefficientSequence CoefficientSequence::tailSequence(Side s) const {
    if (!declared_)
        throw std::domain_error("tailSequence: tabulated coefficient has no declared asymptotics");
    return periodic(s == Side::Left ? left_ : right_);
}

std::optional<std::pair<std::int64_t, std::int64_t>> CoefficientSequence::coreSpan() const {
    if (core_.empty()) return std::nullopt;
    return std::pair<std::int64_t, std::int64_t>{
        coreStart_, coreStart_ + static_cast<std::int64_t>(core_.size()) - 1};
}

std::int64_t CoefficientSequence::structuralReach() const {
    if (auto span = coreSpan())
        return std::max<std::int64_t>(std::llabs(span->first), std::llabs(span->second));
    bool tailsSame = left_.size() == right_.size();
    for (std::size_t i = 0; tailsSame && i < left_.size(); ++i) tailsSame = matEq(left_[i], right_[i]);
    return tailsSame ? 0 : std::llabs(coreStart_);
}

bool CoefficientSequence::isZero(double tol) const {
    for (const auto& m : left_)
        if (!matZero(m, tol)) return false;
    for (const auto& m : right_)
        if (!matZero(m, tol)) return false;
    for (const auto& m : core_)
        if (!matZero(m, tol)) return false;
    return true;
}

double CoefficientSequence::maxEntryNorm() const {
    double v = 0.0;
    for (const auto& m : left_) v = std::max(v, m.cwiseAbs().maxCoeff());
    for (const auto& m : right_) v = std::max(v, m.cwiseAbs().maxCoeff());
    for (const auto& m : core_) v = std::max(v, m.cwiseAbs().maxCoeff());
    return v;
}

bool CoefficientSequence::approxEqual(const CoefficientSequence& a, const CoefficientSequence& b,
                                      double tol) {
    if (a.d_ != b.d_ || a.declared_ != b.declared_) return false;
    if (a.left_.size() != b.left_.size() || a.right_.size() != b.right_.size()) return false;
    if (a.core_.size() != b.core_.size() || a.coreStart_ != b.coreStart_) return false;
    for (std::size_t i = 0; i < a.left_.size(); ++i)
        if (!matNear(a.left_[i], b.left_[i], tol)) return false;
    for (std::size_t i = 0; i < a.right_.size(); ++i)
        if (!matNear(a.right_[i], b.right_[i], tol)) return false;
    for (std::size_t i = 0; i < a.core_.size(); ++i)
        if (!matNear(a.core_[i], b.core_[i], tol)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// ProductSeq

ProductSeq::ProductSeq(int d, std::vector<ProductTerm> terms) : d_(d) {
    if (d < 1) throw std::invalid_argument("ProductSeq: fiber dimension must be >= 1");
    for (auto& t : terms) {
        if (t.axis0.fiberDim() != 1 || t.axis1.fiberDim() != 1)
            throw std::invalid_argument("ProductSeq: axis profiles must be scalar");
        if (t.base.rows() != d || t.base.cols() != d)
            throw std::invalid_argument("ProductSeq: base matrix must be d x d");
        if (t.axis0.isZero() || t.axis1.isZero() || matZero(t.base, 0.0)) continue;
        terms_.push_back(std::move(t));
    }
}

ProductSeq ProductSeq::constant(Matrix a) {
    const int d = static_cast<int>(a.rows());
    ProductTerm t{CoefficientSequence::constant(Complex(1.0, 0.0)),
                  CoefficientSequence::constant(Complex(1.0, 0.0)), std::move(a)};
    return ProductSeq(d, {std::move(t)});
}

ProductSeq ProductSeq::axisProfile(int axis, CoefficientSequence profile, Matrix base) {
    if (axis != 0 && axis != 1) throw std::invalid_argument("axisProfile: axis must be 0 or 1");
    const int d = static_cast<int>(base.rows());
    CoefficientSequence one = CoefficientSequence::constant(Complex(1.0, 0.0));
    ProductTerm t{axis == 0 ? std::move(profile) : one, axis == 1 ? std::move(profile) : one,
                  std::move(base)};
    return ProductSeq(d, {std::move(t)});
}

Matrix ProductSeq::value(const MultiIndex& n) const {
    if (n.dim != 2) throw std::invalid_argument("ProductSeq::value: need a 2-D index");
    Matrix out = Matrix::Zero(d_, d_);
    for (const auto& t : terms_)
        out += t.axis0.scalarValue(n[0]) * t.axis1.scalarValue(n[1]) * t.base;
    return out;
}

ProductSeq ProductSeq::shifted(const MultiIndex& t) const {
    if (t.dim != 2) throw std::invalid_argument("ProductSeq::shifted: need a 2-D shift");
    std::vector<ProductTerm> out;
    out.reserve(terms_.size());
    for (const auto& term : terms_)
        out.push_back({term.axis0.shifted(t[0]), term.axis1.shifted(t[1]), term.base});
    return ProductSeq(d_, std::move(out));
}

ProductSeq ProductSeq::adjointEntries() const {
    std::vector<ProductTerm> out;
    out.reserve(terms_.size());
    for (const auto& term : terms_)
        out.push_back({term.axis0.adjointEntries(), term.axis1.adjointEntries(),
                       term.base.adjoint().eval()});
    return ProductSeq(d_, std::move(out));
}

ProductSeq ProductSeq::scaled(Complex s) const {
    std::vector<ProductTerm> out;
    out.reserve(terms_.size());
    for (const auto& term : terms_) out.push_back({term.axis0, term.axis1, Matrix(term.base * s)});
    return ProductSeq(d_, std::move(out));
}

ProductSeq operator+(const ProductSeq& a, const ProductSeq& b) {
    if (a.d_ != b.d_) throw std::invalid_argument("ProductSeq: fiber dimension mismatch");
    std::vector<ProductTerm> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return ProductSeq(a.d_, std::move(terms));
}

ProductSeq ProductSeq::product(const ProductSeq& a, const ProductSeq& b) {
    if (a.d_ != b.d_) throw std::invalid_argument("ProductSeq: fiber dimension mismatch");
    std::vector<ProductTerm> terms;
    terms.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& p : a.terms_)
        for (const auto& q : b.terms_)
            terms.push_back({CoefficientSequence::product(p.axis0, q.axis0),
                             CoefficientSequence::product(p.axis1, q.axis1),
                             Matrix(p.base * q.base)});
    return ProductSeq(a.d_, std::move(terms));
}

bool ProductSeq::declaredAsymptotics() const {
    for (const auto& t : terms_)
        if (!t.axis0.declaredAsymptotics() || !t.axis1.declaredAsymptotics()) return false;
    return true;
}

std::int64_t ProductSeq::tailPeriod(int axis, Side s) const {
    std::int64_t p = 1;
    for (const auto& t : terms_) p = lcm64(p, (axis == 0 ? t.axis0 : t.axis1).tailPeriod(s));
    return p;
}

std::int64_t ProductSeq::structuralExtent(int axis) const {
    std::int64_t r = 0;
    for (const auto& t : terms_)
        r = std::max(r, (axis == 0 ? t.axis0 : t.axis1).structuralReach());
    return r;
}

ProductSeq ProductSeq::axisLimit(int axis, Side s, std::int64_t phase) const {
    std::vector<ProductTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        ProductTerm nt = t;
        CoefficientSequence& p = axis == 0 ? nt.axis0 : nt.axis1;
        p = p.tailSequence(s).shifted(phase);
        if (!p.isZero()) out.push_back(std::move(nt));
    }
    return ProductSeq(d_, std::move(out));
}

ProductSeq ProductSeq::axisShift(int axis, std::int64_t offset) const {
    std::vector<ProductTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        ProductTerm nt = t;
        CoefficientSequence& p = axis == 0 ? nt.axis0 : nt.axis1;
        p = p.shifted(offset);
        out.push_back(std::move(nt));
    }
    return ProductSeq(d_, std::move(out));
}

std::vector<std::int64_t> ProductSeq::probeAxis(int axis, const ProductSeq& a, const ProductSeq& b) {
    std::int64_t reach = 1, lp = 1, rp = 1;
    auto absorb = [&](const ProductSeq& s) {
        for (const auto& t : s.terms_) {
            const CoefficientSequence& p = axis == 0 ? t.axis0 : t.axis1;
            reach = std::max(reach, p.structuralReach() + 1);
            lp = lcm64(lp, p.tailPeriodRaw(Side::Left));
            rp = lcm64(rp, p.tailPeriodRaw(Side::Right));
        }
    };
    absorb(a);
    absorb(b);
    std::set<std::int64_t> pts;
    for (std::int64_t n = -reach; n <= reach; ++n) pts.insert(n);
    for (std::int64_t i = 0; i < lp; ++i) pts.insert(-reach - 1 - i);
    for (std::int64_t i = 0; i < rp; ++i) pts.insert(reach + 1 + i);
    return {pts.begin(), pts.end()};
}

bool ProductSeq::isZero(double tol) const {
    ProductSeq z(d_, {});
    return approxEqual(*this, z, tol);
}

bool ProductSeq::approxEqual(const ProductSeq& a, const ProductSeq& b, double tol) {
    if (a.d_ != b.d_) return false;
    const auto xs = probeAxis(0, a, b);
    const auto ys = probeAxis(1, a, b);
    for (std::int64_t x : xs)
        for (std::int64_t y : ys) {
            MultiIndex n = MultiIndex::of(x, y);
            if (!matNear(a.value(n), b.value(n), tol)) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Coefficient

int Coefficient::fiberDim() const {
    return std::visit([](const auto& s) { return s.fiberDim(); }, v_);
}

Matrix Coefficient::value(const MultiIndex& n) const {
    if (latticeDim() == 1) {
        if (n.dim != 1) throw std::invalid_argument("Coefficient::value: dimension mismatch");
        return seq1().value(n[0]);
    }
    return seq2().value(n);
}

Coefficient Coefficient::shifted(const MultiIndex& t) const {
    if (latticeDim() == 1) {
        if (t.dim != 1) throw std::invalid_argument("Coefficient::shifted: dimension mismatch");
        return Coefficient(seq1().shifted(t[0]));
    }
    return Coefficient(seq2().shifted(t));
}

Coefficient Coefficient::adjointEntries() const {
    if (latticeDim() == 1) return Coefficient(seq1().adjointEntries());
    return Coefficient(seq2().adjointEntries());
}

Coefficient Coefficient::scaled(Complex s) const {
    if (latticeDim() == 1) return Coefficient(seq1().scaled(s));
    return Coefficient(seq2().scaled(s));
}

Coefficient Coefficient::sum(const Coefficient& a, const Coefficient& b) {
    if (a.latticeDim() != b.latticeDim())
        throw std::invalid_argument("Coefficient::sum: lattice dimension mismatch");
    if (a.latticeDim() == 1) return Coefficient(a.seq1() + b.seq1());
    return Coefficient(a.seq2() + b.seq2());
}

Coefficient Coefficient::product(const Coefficient& a, const Coefficient& b) {
    if (a.latticeDim() != b.latticeDim())
        throw std::invalid_argument("Coefficient::product: lattice dimension mismatch");
    if (a.latticeDim() == 1) return Coefficient(CoefficientSequence::product(a.seq1(), b.seq1()));
    return Coefficient(ProductSeq::product(a.seq2(), b.seq2()));
}

bool Coefficient::declaredAsymptotics() const {
    if (latticeDim() == 1) return seq1().declaredAsymptotics();
    return seq2().declaredAsymptotics();
}

bool Coefficient::isZero(double tol) const {
    if (latticeDim() == 1) return seq1().isZero(tol);
    return seq2().isZero(tol);
}

bool Coefficient::approxEqual(const Coefficient& a, const Coefficient& b, double tol) {
    if (a.latticeDim() != b.latticeDim()) return false;
    if (a.latticeDim() == 1) return CoefficientSequence::approxEqual(a.seq1(), b.seq1(), tol);
    return ProductSeq::approxEqual(a.seq2(), b.seq2(), tol);
}

const CoefficientSequence& Coefficient::seq1() const {
    if (!std::holds_alternative<CoefficientSequence>(v_))
        throw std::logic_error("Coefficient::seq1: coefficient lives on Z^2");
    return std::get<CoefficientSequence>(v_);
}

const ProductSeq& Coefficient::seq2() const {
    if (!std::holds_alternative<ProductSeq>(v_))
        throw std::logic_error("Coefficient::seq2: coefficient lives on Z");
    return std::get<ProductSeq>(v_);
}

}  // namespace bandlab
