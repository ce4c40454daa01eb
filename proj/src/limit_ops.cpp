#include "bandlab/limit_ops.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bandlab/matrix_norms.hpp"

namespace bandlab {

std::string AxisTail::label() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::PlusInf: out << "+inf"; break;
        case Kind::MinusInf: out << "-inf"; break;
        case Kind::Fixed: out << "fixed"; break;
    }
    out << '(' << value << ')';
    return out.str();
}

Direction Direction::tails(std::vector<AxisTail> axes) {
    if (axes.empty() || axes.size() > 2)
        throw std::invalid_argument("Direction::tails: need 1 or 2 axes");
    bool unbounded = false;
    for (const auto& a : axes) unbounded = unbounded || a.kind != AxisTail::Kind::Fixed;
    if (!unbounded)
        throw std::invalid_argument("Direction::tails: direction must tend to infinity");
    Direction d;
    d.axes_ = std::move(axes);
    return d;
}

Direction Direction::explicitSequence(std::vector<MultiIndex> points) {
    if (points.size() < 4)
        throw std::invalid_argument("Direction::explicitSequence: need at least 4 points");
    const int dim = points.front().dim;
    for (const auto& p : points)
        if (p.dim != dim) throw std::invalid_argument("Direction::explicitSequence: mixed dims");
    Direction d;
    d.points_ = std::move(points);
    return d;
}

std::string Direction::label() const {
    std::ostringstream out;
    if (isExplicit()) {
        out << "explicit[" << points_.size() << " pts]";
        return out.str();
    }
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (i) out << " x ";
        out << axes_[i].label();
    }
    return out.str();
}

namespace {

/// classify one coordinate of an explicit sequence against the operator's
/// tail periods; throws when the phases do not stabilize
AxisTail classifyAxis(const BandOperator& A, const std::vector<MultiIndex>& pts, int axis) {
    const std::size_t k = std::max<std::size_t>(2, pts.size() / 2);
    std::vector<std::int64_t> tail;
    for (std::size_t i = pts.size() - k; i < pts.size(); ++i) tail.push_back(pts[i][axis]);

    bool allEqual = std::all_of(tail.begin(), tail.end(),
                                [&](std::int64_t v) { return v == tail.front(); });
    if (allEqual) return AxisTail::fixed(tail.front());

    bool increasing = true, decreasing = true;
    for (std::size_t i = 1; i < tail.size(); ++i) {
        increasing = increasing && tail[i] > tail[i - 1];
        decreasing = decreasing && tail[i] < tail[i - 1];
    }
    if (increasing && tail.front() >= 0) {
        const std::int64_t p = A.tailPeriodLcm(axis, Side::Right);
        const std::int64_t r = posMod(tail.front(), p);
        for (std::int64_t v : tail)
            if (posMod(v, p) != r)
                throw std::invalid_argument(
                    "limit_operator: explicit direction has non-stabilizing phases (mod " +
                    std::to_string(p) + ")");
        return AxisTail::plusInf(r);
    }
    if (decreasing && tail.front() <= 0) {
        const std::int64_t p = A.tailPeriodLcm(axis, Side::Left);
        const std::int64_t r = posMod(tail.front(), p);
        for (std::int64_t v : tail)
            if (posMod(v, p) != r)
                throw std::invalid_argument(
                    "limit_operator: explicit direction has non-stabilizing phases (mod " +
                    std::to_string(p) + ")");
        return AxisTail::minusInf(r);
    }
    throw std::invalid_argument("limit_operator: explicit direction does not settle on one end");
}

CoefficientSequence limitSeq1(const CoefficientSequence& s, const AxisTail& t) {
    switch (t.kind) {
        case AxisTail::Kind::PlusInf: return s.tailSequence(Side::Right).shifted(t.value);
        case AxisTail::Kind::MinusInf: return s.tailSequence(Side::Left).shifted(t.value);
        case AxisTail::Kind::Fixed:
            throw std::invalid_argument("limit_operator: 1-D direction cannot be fixed");
    }
    throw std::logic_error("unreachable");
}

ProductSeq limitSeq2(const ProductSeq& s, const std::vector<AxisTail>& axes) {
    ProductSeq out = s;
    for (int axis = 0; axis < 2; ++axis) {
        const AxisTail& t = axes[static_cast<std::size_t>(axis)];
        switch (t.kind) {
            case AxisTail::Kind::PlusInf: out = out.axisLimit(axis, Side::Right, t.value); break;
            case AxisTail::Kind::MinusInf: out = out.axisLimit(axis, Side::Left, t.value); break;
            case AxisTail::Kind::Fixed: out = out.axisShift(axis, t.value); break;
        }
    }
    return out;
}

BandOperator limitAlongTails(const BandOperator& A, const std::vector<AxisTail>& axes) {
    BandOperator out(A.latticeDim(), A.fiberDim());
    out.setTailBound(A.tailBound());
    for (const auto& [k, a] : A.diagonals()) {
        if (A.latticeDim() == 1)
            out.setDiagonal(k, Coefficient(limitSeq1(a.seq1(), axes.front())));
        else
            out.setDiagonal(k, Coefficient(limitSeq2(a.seq2(), axes)));
    }
    return out;
}

}  // namespace

BandOperator limit_operator(const BandOperator& A, const Direction& dir) {
    if (!A.allCoefficientsDeclared())
        throw std::domain_error(
            "limit_operator: tabulated coefficients carry no declared asymptotic structure");
    if (!dir.isExplicit()) {
        if (static_cast<int>(dir.axes().size()) != A.latticeDim())
            throw std::invalid_argument("limit_operator: direction dimension mismatch");
        return limitAlongTails(A, dir.axes());
    }
    const auto& pts = dir.points();
    if (pts.front().dim != A.latticeDim())
        throw std::invalid_argument("limit_operator: direction dimension mismatch");
    std::vector<AxisTail> axes;
    bool unbounded = false;
    for (int axis = 0; axis < A.latticeDim(); ++axis) {
        axes.push_back(classifyAxis(A, pts, axis));
        unbounded = unbounded || axes.back().kind != AxisTail::Kind::Fixed;
    }
    if (!unbounded)
        throw std::invalid_argument("limit_operator: explicit sequence does not tend to infinity");
    return limitAlongTails(A, axes);
}

namespace {

std::vector<AxisTail> axisOptions(const BandOperator& A, int axis) {
    std::vector<AxisTail> opts;
    if (A.latticeDim() == 2) opts.push_back(AxisTail::fixed(0));
    const std::int64_t pr = A.tailPeriodLcm(axis, Side::Right);
    for (std::int64_t r = 0; r < pr; ++r) opts.push_back(AxisTail::plusInf(r));
    const std::int64_t pl = A.tailPeriodLcm(axis, Side::Left);
    for (std::int64_t r = 0; r < pl; ++r) opts.push_back(AxisTail::minusInf(r));
    return opts;
}

std::int64_t orbitSearchBound(const BandOperator& A, int axis) {
    std::int64_t p = lcm64(A.tailPeriodLcm(axis, Side::Left), A.tailPeriodLcm(axis, Side::Right));
    return p + A.structuralExtent(axis) + 2;
}

}  // namespace

OperatorSpectrum operator_spectrum(const BandOperator& A) {
    if (!A.allCoefficientsDeclared())
        throw std::domain_error(
            "operator_spectrum: tabulated coefficients carry no declared asymptotic structure");

    std::vector<std::vector<AxisTail>> combos;
    if (A.latticeDim() == 1) {
        for (const auto& t : axisOptions(A, 0)) combos.push_back({t});
    } else {
        for (const auto& t0 : axisOptions(A, 0))
            for (const auto& t1 : axisOptions(A, 1)) {
                if (t0.kind == AxisTail::Kind::Fixed && t1.kind == AxisTail::Kind::Fixed) continue;
                combos.push_back({t0, t1});
            }
    }

    OperatorSpectrum spec;
    for (const auto& axes : combos) {
        BandOperator rep = limitAlongTails(A, axes);
        std::string lbl;
        for (std::size_t i = 0; i < axes.size(); ++i)
            lbl += (i ? " x " : "") + axes[i].label();
        bool dup = false;
        for (auto& e : spec.entries)
            if (BandOperator::approxEqual(e.op, rep)) {
                e.directions.push_back(lbl);
                dup = true;
                break;
            }
        if (dup) continue;
        SpectrumEntry entry;
        entry.op = rep;
        entry.directions.push_back(lbl);
        for (int axis = 0; axis < A.latticeDim(); ++axis) {
            MultiIndex unit = A.latticeDim() == 1 ? MultiIndex::of(1)
                                                  : (axis == 0 ? MultiIndex::of(1, 0)
                                                               : MultiIndex::of(0, 1));
            if (BandOperator::approxEqual(rep.conjugatedByShift(unit), rep))
                entry.invariantAxes.push_back(axis);
        }
        // a genuinely pinned axis makes the entry stand for its shift orbit
        for (std::size_t i = 0; i < axes.size(); ++i)
            if (axes[i].kind == AxisTail::Kind::Fixed &&
                std::find(entry.invariantAxes.begin(), entry.invariantAxes.end(),
                          static_cast<int>(i)) == entry.invariantAxes.end())
                entry.orbitUnderShifts = true;
        spec.entries.push_back(std::move(entry));
    }

    // link representatives that are shifted copies of one another
    std::vector<int> orbit(spec.entries.size());
    std::iota(orbit.begin(), orbit.end(), 0);
    const std::int64_t b0 = orbitSearchBound(A, 0);
    const std::int64_t b1 = A.latticeDim() == 2 ? orbitSearchBound(A, 1) : 0;
    for (std::size_t i = 0; i < spec.entries.size(); ++i)
        for (std::size_t j = i + 1; j < spec.entries.size(); ++j) {
            if (orbit[j] != static_cast<int>(j)) continue;
            bool linked = false;
            for (std::int64_t s0 = -b0; s0 <= b0 && !linked; ++s0)
                for (std::int64_t s1 = -b1; s1 <= b1 && !linked; ++s1) {
                    MultiIndex s = A.latticeDim() == 1 ? MultiIndex::of(s0) : MultiIndex::of(s0, s1);
                    if (s.maxNorm() == 0) continue;
                    linked = BandOperator::approxEqual(spec.entries[i].op.conjugatedByShift(s),
                                                       spec.entries[j].op);
                }
            if (linked) orbit[j] = orbit[static_cast<std::size_t>(i)];
        }
    for (std::size_t i = 0; i < spec.entries.size(); ++i) spec.entries[i].orbitId = orbit[i];
    return spec;
}

bool spectrum_contains(const OperatorSpectrum& spec, const BandOperator& C, double tol) {
    for (const auto& e : spec.entries) {
        if (BandOperator::approxEqual(e.op, C, tol)) return true;
        if (e.orbitUnderShifts) {
            const std::int64_t b0 = orbitSearchBound(e.op, 0) + orbitSearchBound(C, 0);
            const std::int64_t b1 =
                e.op.latticeDim() == 2 ? orbitSearchBound(e.op, 1) + orbitSearchBound(C, 1) : 0;
            for (std::int64_t s0 = -b0; s0 <= b0; ++s0)
                for (std::int64_t s1 = -b1; s1 <= b1; ++s1) {
                    MultiIndex s =
                        e.op.latticeDim() == 1 ? MultiIndex::of(s0) : MultiIndex::of(s0, s1);
                    if (BandOperator::approxEqual(e.op.conjugatedByShift(s), C, tol)) return true;
                }
        }
    }
    return false;
}

std::vector<PStrongRow> verify_pstrong(const BandOperator& A, const std::vector<MultiIndex>& h,
                                       const BandOperator& B, const std::vector<std::int64_t>& windows,
                                       NormTag t) {
    if (A.latticeDim() != B.latticeDim() || A.fiberDim() != B.fiberDim())
        throw std::invalid_argument("verify_pstrong: operator shape mismatch");
    std::vector<PStrongRow> rows;
    const int dim = A.latticeDim();
    for (std::size_t step = 0; step < h.size(); ++step) {
        BandOperator diff = A.conjugatedByShift(h[step]) - B;
        const std::int64_t w = diff.bandwidth();
        for (std::int64_t m : windows) {
            auto inner = Window(dim, m).indices();
            auto outer = Window(dim, m + w).indices();
            double defect = operator_norm(compression(diff, inner, outer), t) +
                            operator_norm(compression(diff, outer, inner), t);
            rows.push_back({step, h[step], m, defect});
        }
    }
    return rows;
}

AdjointSpectrumReport adjoint_spectrum_check(const BandOperator& A) {
    OperatorSpectrum ofAdjoint = operator_spectrum(A.adjoint());
    OperatorSpectrum ofA = operator_spectrum(A);

    AdjointSpectrumReport report;
    report.adjointSpectrumSize = ofAdjoint.size();
    report.spectrumAdjointSize = ofA.size();
    if (ofAdjoint.size() != ofA.size()) {
        report.detail = "representative counts differ";
        return report;
    }
    std::vector<bool> used(ofA.size(), false);
    for (const auto& e : ofAdjoint.entries) {
        bool matched = false;
        for (std::size_t j = 0; j < ofA.size(); ++j) {
            if (used[j]) continue;
            if (BandOperator::approxEqual(e.op, ofA.entries[j].op.adjoint())) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) {
            report.detail = "unmatched representative in sigma_op(A*)";
            return report;
        }
    }
    // orbit structure: multiset of orbit sizes must agree
    auto orbitSizes = [](const OperatorSpectrum& s) {
        std::map<int, int> m;
        for (const auto& e : s.entries) m[e.orbitId]++;
        std::vector<int> out;
        for (auto& [id, c] : m) out.push_back(c);
        std::sort(out.begin(), out.end());
        return out;
    };
    if (orbitSizes(ofAdjoint) != orbitSizes(ofA)) {
        report.detail = "orbit structure differs";
        return report;
    }
    report.equal = true;
    return report;
}

}  // namespace bandlab
