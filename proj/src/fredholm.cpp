#include "bandlab/fredholm.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bandlab/matrix_norms.hpp"

namespace bandlab {

namespace {

void requireSymbolClasses(const BandOperator& L) {
    if (L.latticeDim() != 1)
        throw std::invalid_argument("symbol route: operators on Z only");
    for (const auto& [k, a] : L.diagonals()) {
        auto c = a.seq1().klass();
        if (c != CoefficientSequence::Class::Constant && c != CoefficientSequence::Class::Periodic)
            throw std::domain_error("symbol route: constant or periodic coefficients required");
    }
}

/// block coefficients of the period-P lift: the operator acts on blocks of
/// P consecutive sites as sum_S B_S (block shift)^S
std::map<std::int64_t, Matrix> blockSymbolCoefficients(const BandOperator& L, std::int64_t P) {
    const int d = L.fiberDim();
    std::map<std::int64_t, Matrix> blocks;
    for (const auto& [k, a] : L.diagonals()) {
        const CoefficientSequence& s = a.seq1();
        for (std::int64_t r = 0; r < P; ++r) {
            Matrix val = s.value(r);
            if (val.cwiseAbs().maxCoeff() == 0.0) continue;
            const std::int64_t u = r - k[0];
            const std::int64_t r2 = posMod(u, P);
            const std::int64_t S = (r2 - u) / P;
            auto& B = blocks.try_emplace(S, Matrix::Zero(P * d, P * d)).first->second;
            B.block(r * d, r2 * d, d, d) += val;
        }
    }
    return blocks;
}

Matrix evalSymbol(const std::map<std::int64_t, Matrix>& blocks, int pd, double theta) {
    Matrix b = Matrix::Zero(pd, pd);
    for (const auto& [S, B] : blocks)
        b += B * std::polar(1.0, theta * static_cast<double>(S));
    return b;
}

SymbolCurve sampleCurve(const std::map<std::int64_t, Matrix>& blocks, int pd, int grid) {
    SymbolCurve curve;
    curve.gridSize = grid;
    curve.liftedDim = pd;
    curve.sigmaMin.reserve(static_cast<std::size_t>(grid));
    curve.minValue = std::numeric_limits<double>::infinity();
    for (int g = 0; g < grid; ++g) {
        const double theta = 2.0 * std::numbers::pi * g / grid;
        double s = smallest_singular_value(evalSymbol(blocks, pd, theta));
        curve.sigmaMin.push_back(s);
        curve.minValue = std::min(curve.minValue, s);
    }
    return curve;
}

}  // namespace

SymbolInvertibility symbol_invertibility(const BandOperator& L, double tol) {
    requireSymbolClasses(L);
    const std::int64_t P = L.tailPeriodLcm(0, Side::Right);
    const int pd = static_cast<int>(P) * L.fiberDim();
    auto blocks = blockSymbolCoefficients(L, P);

    SymbolInvertibility out;
    SymbolCurve coarse = sampleCurve(blocks, pd, 256);
    out.curve = sampleCurve(blocks, pd, 1024);  // one mandatory refinement
    out.jEstimate = std::min(coarse.minValue, out.curve.minValue);
    out.invertible = out.jEstimate > tol;
    return out;
}

double symbol_inverse_norm(const BandOperator& L, int grid) {
    requireSymbolClasses(L);
    const std::int64_t P = L.tailPeriodLcm(0, Side::Right);
    const int pd = static_cast<int>(P) * L.fiberDim();
    auto blocks = blockSymbolCoefficients(L, P);
    double best = 0.0;
    for (int g = 0; g < grid; ++g) {
        const double theta = 2.0 * std::numbers::pi * (g + 0.5) / grid;
        Matrix b = evalSymbol(blocks, pd, theta);
        Eigen::FullPivLU<Matrix> lu(b);
        if (!lu.isInvertible())
            throw std::domain_error("symbol_inverse_norm: symbol is singular on the grid");
        best = std::max(best, largest_singular_value(lu.inverse()));
    }
    return best;
}

// ---------------------------------------------------------------------------
// bounded-below evidence

namespace {

double localizedMinimum1d(const BandOperator& B, int width, std::int64_t extra) {
    const std::int64_t w = B.bandwidth();
    const std::int64_t reach = B.structuralExtent(0) +
                               lcm64(B.tailPeriodLcm(0, Side::Left), B.tailPeriodLcm(0, Side::Right)) +
                               extra;
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t pos = -reach - width; pos <= reach; ++pos) {
        std::vector<MultiIndex> cols, rows;
        for (std::int64_t i = 0; i < width; ++i) cols.push_back(MultiIndex::of(pos + i));
        for (std::int64_t i = -w; i < width + w; ++i) rows.push_back(MultiIndex::of(pos + i));
        best = std::min(best, smallest_singular_value(compression(B, rows, cols)));
        if (best == 0.0) break;
    }
    return best;
}

double localizedMinimum2d(const BandOperator& B, int width, std::int64_t extra) {
    const std::int64_t w = B.bandwidth();
    const std::int64_t rho = std::max<std::int64_t>(1, width / 2);
    std::array<std::vector<std::int64_t>, 2> centers;
    for (int axis = 0; axis < 2; ++axis) {
        MultiIndex unit = axis == 0 ? MultiIndex::of(1, 0) : MultiIndex::of(0, 1);
        if (BandOperator::approxEqual(B.conjugatedByShift(unit), B)) {
            centers[static_cast<std::size_t>(axis)] = {0};
            continue;
        }
        const std::int64_t reach =
            B.structuralExtent(axis) +
            lcm64(B.tailPeriodLcm(axis, Side::Left), B.tailPeriodLcm(axis, Side::Right)) + extra / 2;
        for (std::int64_t c = -reach; c <= reach; ++c)
            centers[static_cast<std::size_t>(axis)].push_back(c);
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t c0 : centers[0])
        for (std::int64_t c1 : centers[1]) {
            std::vector<MultiIndex> cols, rows;
            for (std::int64_t i = -rho; i <= rho; ++i)
                for (std::int64_t j = -rho; j <= rho; ++j)
                    cols.push_back(MultiIndex::of(c0 + i, c1 + j));
            const std::int64_t rr = rho + w;
            for (std::int64_t i = -rr; i <= rr; ++i)
                for (std::int64_t j = -rr; j <= rr; ++j)
                    rows.push_back(MultiIndex::of(c0 + i, c1 + j));
            best = std::min(best, smallest_singular_value(compression(B, rows, cols)));
            if (best == 0.0) return best;
        }
    return best;
}

}  // namespace

BoundedBelowResult bounded_below_numeric(const BandOperator& B, NormTag t, const SweepBudget& budget) {
    if (t.p != NormTag::P::Two)
        throw std::invalid_argument("bounded_below_numeric: p = 2 only");

    BoundedBelowResult res;
    for (int width : budget.widths) {
        double v = B.latticeDim() == 1 ? localizedMinimum1d(B, width, budget.extraPositions)
                                       : localizedMinimum2d(B, width, budget.extraPositions);
        res.sweep.emplace_back(width, v);
        Window sq(B.latticeDim(), std::max<std::int64_t>(1, width / 2));
        res.squareSigma.emplace_back(width,
                                     smallest_singular_value(compression(B, sq.indices(), sq.indices())));
        if (v <= budget.tolZero) break;  // an explicit near-kernel window settles it
    }

    const double tail = B.tailBound();
    const double last = res.sweep.back().second;
    if (last <= budget.tolZero) {
        res.verdict = BoundedBelowResult::Verdict::NotBoundedBelow;
        res.lo = 0.0;
        res.hi = last + tail;
        res.note = "window with vanishing localized lower norm found";
        return res;
    }
    if (res.sweep.size() >= 2) {
        const double prev = res.sweep[res.sweep.size() - 2].second;
        const double drop = prev - last;
        if (drop <= budget.stabilityRel * std::max(last, 1e-300)) {
            res.lo = std::max(0.0, last - drop - budget.margin - tail);
            res.hi = last + tail;
            res.verdict = res.lo > budget.tolZero ? BoundedBelowResult::Verdict::BoundedBelow
                                                  : BoundedBelowResult::Verdict::Undecided;
            res.note = "localized values stabilized over window widths";
            return res;
        }
        if (last <= budget.trendRatio * prev && last <= 0.5 * res.sweep.front().second) {
            res.verdict = BoundedBelowResult::Verdict::NotBoundedBelow;
            res.lo = 0.0;
            res.hi = last + tail;
            res.note = "localized values decay as the window widens";
            return res;
        }
    }
    res.lo = 0.0;
    res.hi = last + tail;
    res.verdict = BoundedBelowResult::Verdict::Undecided;
    res.note = "budget exhausted without stabilization";
    return res;
}

// ---------------------------------------------------------------------------
// condition ladder

namespace {

TV and3(TV a, TV b) {
    if (a == TV::False || b == TV::False) return TV::False;
    if (a == TV::True && b == TV::True) return TV::True;
    return TV::Unknown;
}

TV or3(TV a, TV b) {
    if (a == TV::True || b == TV::True) return TV::True;
    if (a == TV::False && b == TV::False) return TV::False;
    return TV::Unknown;
}

TV fromBounded(const BoundedBelowResult& r) {
    switch (r.verdict) {
        case BoundedBelowResult::Verdict::BoundedBelow: return TV::True;
        case BoundedBelowResult::Verdict::NotBoundedBelow: return TV::False;
        case BoundedBelowResult::Verdict::Undecided: return TV::Unknown;
    }
    return TV::Unknown;
}

const char* tvName(TV v) {
    switch (v) {
        case TV::True: return "holds";
        case TV::False: return "fails";
        case TV::Unknown: return "undecided";
    }
    return "?";
}

bool symbolCapable(const BandOperator& B) {
    if (B.latticeDim() != 1) return false;
    for (const auto& [k, a] : B.diagonals()) {
        auto c = a.seq1().klass();
        if (c != CoefficientSequence::Class::Constant && c != CoefficientSequence::Class::Periodic)
            return false;
    }
    return true;
}

}  // namespace

ConditionLadder check_conditions(const BandOperator& A, const OperatorSpectrum& spectrum,
                                 const LadderOptions& opts) {
    ConditionLadder ladder;

    TV allBounded = TV::True, allAdjBounded = TV::True, allInvertible = TV::True;
    TV allInjective = TV::True, allOneSided = TV::True;

    for (const auto& entry : spectrum.entries) {
        RepresentativeEvidence ev;
        ev.name = entry.directions.empty() ? "representative" : entry.directions.front();
        ev.lower = bounded_below_numeric(entry.op, NormTag::p2(), opts.budget);
        ev.adjointLower = bounded_below_numeric(entry.op.adjoint(), NormTag::p2(), opts.budget);
        if (symbolCapable(entry.op)) ev.symbol = symbol_invertibility(entry.op);

        TV bounded = fromBounded(ev.lower);
        TV adjBounded = fromBounded(ev.adjointLower);
        ev.invertible = ev.symbol ? (ev.symbol->invertible ? TV::True : TV::False)
                                  : and3(bounded, adjBounded);

        DefectTrack kernelTrack = kernel_defect_track(entry.op, opts.radii, opts.tol);
        if (bounded == TV::True)
            ev.injective = TV::True;
        else if (kernelTrack.estimate.has_value())
            ev.injective = *kernelTrack.estimate == 0 ? TV::True : TV::False;
        else if (kernelTrack.infinite)
            ev.injective = TV::False;
        ev.oneSided = or3(bounded, adjBounded);

        allBounded = and3(allBounded, bounded);
        allAdjBounded = and3(allAdjBounded, adjBounded);
        allInvertible = and3(allInvertible, ev.invertible);
        allInjective = and3(allInjective, ev.injective);
        allOneSided = and3(allOneSided, ev.oneSided);
        ladder.reps.push_back(std::move(ev));
    }

    auto put = [&](const std::string& key, TV v, const std::string& evidence) {
        ladder.conditions[key] = ConditionVerdict{v, evidence};
    };
    put("ii", allInvertible, "symbol minima / two-sided bounded-below evidence per representative");
    put("iii", allBounded, "left invertibility tested as bounded below (p=2)");
    put("iv", allAdjBounded, "right invertibility tested as adjoint bounded below (p=2)");
    put("v", allBounded, "localized lower-norm sweeps per representative");
    put("vi", allAdjBounded, "surjectivity tested as adjoint bounded below (p=2)");
    put("vii", allInjective, "bounded-below or stable zero near-kernel count per representative");
    put("viii", allOneSided, "bounded below or adjoint bounded below, per representative");

    TV fredholm = TV::Unknown;
    if (A.latticeDim() == 1) {
        if (allBounded == TV::True && allAdjBounded == TV::True)
            fredholm = TV::True;
        else if (allBounded == TV::False || allAdjBounded == TV::False)
            fredholm = TV::False;
        if ((allBounded == TV::True && allAdjBounded == TV::False) ||
            (allBounded == TV::False && allAdjBounded == TV::True)) {
            fredholm = TV::Unknown;
            ladder.consistent = false;
            ladder.notes.push_back(
                "conditions (v) and (vi) disagree; on Z they are equivalent, so the numerics are "
                "inconclusive");
        }
    } else {
        fredholm = allInvertible;
    }
    put("i", fredholm, A.latticeDim() == 1
                           ? "concluded from (v)/(vi) over the spectrum (Z, finite fiber)"
                           : "concluded from invertibility of all representatives");

    // implication sanity: (ii) => (iii),(iv),(vii); violations indicate bugs
    auto implies = [&](const char* a, const char* b) {
        if (ladder.conditions[a].v == TV::True && ladder.conditions[b].v == TV::False) {
            ladder.consistent = false;
            ladder.notes.push_back(std::string("implication ") + a + " => " + b + " violated");
        }
    };
    implies("ii", "iii");
    implies("ii", "iv");
    implies("ii", "vii");
    implies("iii", "v");
    implies("iv", "vi");

    ladder.favardGapNoted = fredholm == TV::False && allInjective == TV::True;
    if (ladder.favardGapNoted)
        ladder.notes.push_back(
            "all representatives injective, yet not Fredholm: injectivity alone decides "
            "Fredholmness only on the sup-norm space");

    if (allInvertible == TV::True) {
        bool allSymbol = true;
        double supInv = 0.0, infJ = std::numeric_limits<double>::infinity();
        for (const auto& ev : ladder.reps) {
            if (!ev.symbol) {
                allSymbol = false;
                break;
            }
            infJ = std::min(infJ, ev.symbol->jEstimate);
        }
        if (allSymbol) {
            for (const auto& entry : spectrum.entries)
                supInv = std::max(supInv, symbol_inverse_norm(entry.op));
            ladder.normIdentity = supInv * infJ;
        } else {
            ladder.notes.push_back("norm identity skipped: non translation-invariant representative");
        }
    }

    ladder.crossCheck = truncation_sweep_classify(A, opts.radii, opts.tol);
    if (fredholm == TV::True && (ladder.crossCheck.kernel.infinite || ladder.crossCheck.cokernel.infinite)) {
        ladder.consistent = false;
        ladder.notes.push_back("ladder says Fredholm but the truncation sweep sees growing defects");
    }
    if (fredholm == TV::False && ladder.crossCheck.verdict == FredholmVerdict::Fredholm) {
        ladder.consistent = false;
        ladder.notes.push_back("ladder says not Fredholm but the truncation sweep stabilized");
    }

    std::ostringstream conclusion;
    conclusion << "Fredholm: " << tvName(fredholm) << "; sweep: "
               << verdictName(ladder.crossCheck.verdict);
    ladder.conclusion = conclusion.str();
    return ladder;
}

ConditionLadder check_conditions(const BandOperator& A, const LadderOptions& opts) {
    return check_conditions(A, operator_spectrum(A), opts);
}

// ---------------------------------------------------------------------------
// compression-argument trace

TsemiTrace tsemi_trace(const BandOperator& A, int m, std::optional<double> eps, NormTag t,
                       const TsemiOptions& opts) {
    if (t.p != NormTag::P::Two) throw std::invalid_argument("tsemi_trace: p = 2 only");
    if (A.latticeDim() != 1) throw std::invalid_argument("tsemi_trace: operators on Z only");
    if (m < 1) throw std::invalid_argument("tsemi_trace: m must be >= 1");

    TsemiTrace trace;
    trace.m = m;
    trace.epsAuto = !eps.has_value();

    // stabilized estimate of s^l_m from square truncations
    std::vector<double> est;
    for (std::int64_t n : opts.radii) {
        Window w(1, n);
        TruncatedMatrix M = truncate(A, w, w, t);
        est.push_back(approx_numbers(M, m, ApproxSide::Left).back());
    }
    trace.estimate = est.back();
    if (est.size() >= 3) {
        auto rel = [](double a, double b) { return std::abs(a - b) / std::max({1.0, a, b}); };
        trace.estimateStable = rel(est[est.size() - 1], est[est.size() - 2]) < opts.stabTol &&
                               rel(est[est.size() - 2], est[est.size() - 3]) < opts.stabTol;
    }
    trace.eps = eps.value_or(trace.estimate);

    const std::int64_t d = A.fiberDim();
    const std::int64_t maxL = A.bandwidth() + opts.extraMargin;
    for (std::int64_t l = 0; l <= maxL && trace.chosenL < 0; ++l) {
        bool ok = true;
        for (std::int64_t n : opts.radii) {
            if (n <= l) continue;
            if (off_band_defect(A, n, l, t) + 2.0 * A.tailBound() > trace.eps / 5.0 + 1e-15) {
                ok = false;
                break;
            }
        }
        if (ok) trace.chosenL = l;
    }
    if (trace.chosenL < 0)
        throw BudgetExceededError(
            "tsemi_trace: no l with corner defects below eps/5 within bandwidth + margin");

    trace.indexHolds = true;
    trace.chainHolds = true;
    for (std::int64_t n : opts.radii) {
        if (n <= trace.chosenL) continue;
        const std::int64_t l = trace.chosenL;
        trace.defects.push_back({n, off_band_defect(A, n, l, t)});

        TsemiIndexRow idx;
        idx.n = n;
        idx.rowDim = d * (2 * (n - l) + 1);
        idx.colDim = d * (2 * n + 1);
        idx.k = 2 * l * d + m;
        idx.holds = idx.rowDim - idx.colDim + idx.k == m;
        trace.indexHolds = trace.indexHolds && idx.holds;
        trace.indexChecks.push_back(idx);

        TruncatedMatrix B = truncate(A, Window(1, n - l), Window(1, n), t);
        TsemiChainRow row;
        row.n = n;
        row.slmB = approx_numbers(B, m, ApproxSide::Left).back();
        row.slack = trace.estimate + trace.eps / 5.0 - row.slmB;
        trace.chainHolds = trace.chainHolds && row.slack >= -1e-9;
        trace.chain.push_back(row);
    }
    return trace;
}

}  // namespace bandlab
