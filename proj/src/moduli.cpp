#include "bandlab/moduli.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "bandlab/matrix_norms.hpp"

namespace bandlab {

namespace {

std::string fmtDouble(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<double> ascendingPadded(const Matrix& m, Eigen::Index padLen) {
    RealVector sv = singular_values(m);  // descending
    std::vector<double> asc;
    asc.reserve(static_cast<std::size_t>(padLen));
    for (Eigen::Index i = 0; i < padLen - sv.size(); ++i) asc.push_back(0.0);
    for (Eigen::Index i = sv.size() - 1; i >= 0; --i) {
        if (static_cast<Eigen::Index>(asc.size()) >= padLen) break;
        asc.push_back(sv(i));
    }
    return asc;
}

}  // namespace

double lower_norm(const TruncatedMatrix& M) {
    if (M.entries.size() == 0) return 0.0;
    if (M.tag.p == NormTag::P::Two) return smallest_singular_value(M.entries);
    if (M.entries.rows() != M.entries.cols())
        throw std::invalid_argument("lower_norm: p in {1, inf} requires a square matrix");
    Eigen::FullPivLU<Matrix> lu(M.entries);
    if (!lu.isInvertible()) return 0.0;
    Matrix inv = lu.inverse();
    return 1.0 / operator_norm(inv, M.tag);
}

double surjection_modulus(const TruncatedMatrix& M) {
    TruncatedMatrix dualM{M.colWindow, M.rowWindow, M.tag.dual(), M.entries.adjoint()};
    return lower_norm(dualM);
}

std::vector<double> approx_numbers(const TruncatedMatrix& M, int mMax, ApproxSide side) {
    if (M.tag.p != NormTag::P::Two)
        throw std::invalid_argument("approx_numbers: exact values are available at p = 2 only");
    if (mMax < 1) throw std::invalid_argument("approx_numbers: mMax must be >= 1");
    const Eigen::Index padLen = side == ApproxSide::Right ? M.entries.cols() : M.entries.rows();
    std::vector<double> asc = ascendingPadded(M.entries, padLen);
    if (static_cast<Eigen::Index>(mMax) < padLen) asc.resize(static_cast<std::size_t>(mMax));
    return asc;
}

SandwichReport sandwich_check(const TruncatedMatrix& M, int mMax, double tol) {
    if (M.tag.p != NormTag::P::Two)
        throw std::invalid_argument("sandwich_check: p = 2 only");
    const Eigen::Index n = M.entries.cols();
    Eigen::JacobiSVD<Matrix> svd(M.entries, Eigen::ComputeFullV);
    std::vector<double> asc = ascendingPadded(M.entries, n);

    std::mt19937 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SandwichReport report;
    const int top = std::min<Eigen::Index>(mMax, n);
    for (int m = 1; m <= top; ++m) {
        SandwichRow row;
        row.m = m;
        row.sigma = asc[static_cast<std::size_t>(m - 1)];
        // optimal codimension-(m-1) subspace from the singular basis
        const Eigen::Index dimV = n - m + 1;
        Matrix basis = svd.matrixV().leftCols(dimV);
        row.bernstein = smallest_singular_value(M.entries * basis);
        row.slackFactor = std::pow(2.0, m) - 1.0;
        row.generalLowerBound = row.sigma / row.slackFactor;
        row.equalWithinTol = std::abs(row.bernstein - row.sigma) <= tol;

        // a random competitor subspace must not beat the optimum
        Matrix randMat(n, dimV);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < dimV; ++j) randMat(i, j) = Complex(gauss(rng), gauss(rng));
        Eigen::HouseholderQR<Matrix> qr(randMat);
        Matrix q = qr.householderQ() * Matrix::Identity(n, dimV);
        double competitor = smallest_singular_value(M.entries * q);

        bool ok = row.equalWithinTol && competitor <= row.bernstein + tol &&
                  row.generalLowerBound <= row.bernstein + tol && row.bernstein <= row.sigma + tol;
        report.holds = report.holds && ok;
        report.maxDeviation = std::max(report.maxDeviation, std::abs(row.bernstein - row.sigma));
        report.rows.push_back(row);
    }
    return report;
}

double column_compression_sigma_min(const BandOperator& A, const Window& colW) {
    Window rowW(colW.dim, colW.radius + A.bandwidth());
    return smallest_singular_value(compression(A, rowW.indices(), colW.indices()));
}

LowerNormProfile localized_lower_norm(const BandOperator& A, int D, std::int64_t rangeLo,
                                      std::int64_t rangeHi, NormTag t) {
    if (D < 1) throw std::invalid_argument("localized_lower_norm: window width must be >= 1");
    if (t.p != NormTag::P::Two)
        throw std::invalid_argument("localized_lower_norm: p = 2 only");
    if (A.latticeDim() != 1)
        throw std::invalid_argument("localized_lower_norm: sliding profile is 1-D; use "
                                    "column_compression_sigma_min on Z^2");
    if (rangeHi < rangeLo) throw std::invalid_argument("localized_lower_norm: empty range");

    const std::int64_t w = A.bandwidth();
    LowerNormProfile profile;
    profile.width = D;
    profile.globalMin = std::numeric_limits<double>::infinity();
    for (std::int64_t pos = rangeLo; pos <= rangeHi; ++pos) {
        std::vector<MultiIndex> cols, rows;
        for (std::int64_t i = 0; i < D; ++i) cols.push_back(MultiIndex::of(pos + i));
        for (std::int64_t i = -w; i < D + w; ++i) rows.push_back(MultiIndex::of(pos + i));
        double v = smallest_singular_value(compression(A, rows, cols));
        profile.values.emplace_back(pos, v);
        profile.globalMin = std::min(profile.globalMin, v);
    }
    return profile;
}

ModuliReport moduli_sweep(const BandOperator& A, const std::vector<std::int64_t>& radii, NormTag t,
                          int mMax, double tol) {
    if (radii.empty()) throw std::invalid_argument("moduli_sweep: need at least one radius");
    ModuliReport report;
    report.tag = t;
    report.mMax = mMax;
    report.tol = tol;
    for (std::int64_t n : radii) {
        Window w(A.latticeDim(), n);
        TruncatedMatrix M = truncate(A, w, w, t);
        ModuliRow row;
        row.radius = n;
        row.j = lower_norm(M);
        row.q = surjection_modulus(M);
        if (t.p == NormTag::P::Two) {
            row.sRight = approx_numbers(M, mMax, ApproxSide::Right);
            row.sLeft = approx_numbers(M, mMax, ApproxSide::Left);
            row.sigma = row.sRight;  // square truncation: sigma list = right numbers
            row.stable.assign(row.sigma.size(), false);
            if (!report.rows.empty()) {
                const auto& prev = report.rows.back().sigma;
                for (std::size_t m = 0; m < row.sigma.size() && m < prev.size(); ++m)
                    row.stable[m] =
                        std::abs(row.sigma[m] - prev[m]) <= tol * std::max(1.0, std::abs(row.sigma[m]));
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string ModuliReport::toCsv() const {
    std::ostringstream out;
    out << "radius,j,q";
    for (int m = 1; m <= mMax; ++m) out << ",sigma_" << m;
    out << ",flags\n";
    for (const auto& row : rows) {
        out << row.radius << ',' << fmtDouble(row.j) << ',' << fmtDouble(row.q);
        for (int m = 0; m < mMax; ++m) {
            out << ',';
            if (m < static_cast<int>(row.sigma.size())) out << fmtDouble(row.sigma[m]);
        }
        out << ',';
        for (bool b : row.stable) out << (b ? '1' : '0');
        out << '\n';
    }
    return out.str();
}

const char* verdictName(FredholmVerdict v) {
    switch (v) {
        case FredholmVerdict::Fredholm: return "fredholm";
        case FredholmVerdict::PlusNotFredholm: return "semi-fredholm-plus-only";
        case FredholmVerdict::MinusNotFredholm: return "semi-fredholm-minus-only";
        case FredholmVerdict::NotSemiFredholm: return "not-semi-fredholm";
        case FredholmVerdict::Undecided: return "undecided";
    }
    return "?";
}

namespace {

void analyzeTrack(DefectTrack& d, double tol) {
    const std::size_t k = d.counts.size();
    if (k < 3) return;
    d.countStable = d.counts[k - 1] == d.counts[k - 2] && d.counts[k - 2] == d.counts[k - 3];
    d.countGrowing = d.counts[k - 1] > d.counts[k - 2] && d.counts[k - 2] > d.counts[k - 3];
    const double g0 = d.gaps[k - 3], g1 = d.gaps[k - 2], g2 = d.gaps[k - 1];
    d.gapStable = std::abs(g2 - g1) <= tol * std::max({1.0, std::abs(g2), std::abs(g1)}) &&
                  std::abs(g1 - g0) <= tol * std::max({1.0, std::abs(g1), std::abs(g0)});
    d.gapVanishing = g1 > 0.0 && g0 > 0.0 && g2 <= 0.85 * g1 && g1 <= 0.85 * g0 &&
                     g2 <= 0.5 * d.gaps.front();
    d.separated = d.gaps[k - 1] > 10.0 * tol;
    if (d.countStable && d.gapStable && d.separated) d.estimate = d.counts[k - 1];
    if (d.countGrowing && d.separated) d.infinite = true;
}

std::pair<std::int64_t, double> countAndGap(const Matrix& m, double tol) {
    RealVector sv = singular_values(m);  // descending
    std::int64_t count = 0;
    double gap = 0.0;
    for (Eigen::Index i = sv.size() - 1; i >= 0; --i) {
        if (sv(i) <= tol) {
            ++count;
        } else {
            gap = sv(i);
            break;
        }
    }
    return {count, gap};
}

}  // namespace

DefectTrack kernel_defect_track(const BandOperator& A, const std::vector<std::int64_t>& radii,
                                double tol) {
    DefectTrack track;
    const int dim = A.latticeDim();
    const std::int64_t w = A.bandwidth();
    for (std::int64_t n : radii) {
        auto inner = Window(dim, n).indices();
        auto outer = Window(dim, n + w).indices();
        auto [c, g] = countAndGap(compression(A, outer, inner), tol);
        track.counts.push_back(c);
        track.gaps.push_back(g);
    }
    analyzeTrack(track, tol);
    return track;
}

SweepClassification truncation_sweep_classify(const BandOperator& A,
                                              const std::vector<std::int64_t>& radii, double tol) {
    if (radii.size() < 3)
        throw std::invalid_argument("truncation_sweep_classify: need at least 3 radii");
    std::vector<std::int64_t> rs = radii;
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());

    SweepClassification out;
    out.radii = rs;
    out.tol = tol;
    const int dim = A.latticeDim();
    const std::int64_t w = A.bandwidth();

    for (std::int64_t n : rs) {
        auto inner = Window(dim, n).indices();
        auto outer = Window(dim, n + w).indices();
        // kernel side: columns restricted, rows see the full image
        auto [kc, kg] = countAndGap(compression(A, outer, inner), tol);
        out.kernel.counts.push_back(kc);
        out.kernel.gaps.push_back(kg);
        // cokernel side: rows restricted, columns see the full preimage
        auto [cc, cg] = countAndGap(compression(A, inner, outer), tol);
        out.cokernel.counts.push_back(cc);
        out.cokernel.gaps.push_back(cg);

        Matrix sq = compression(A, inner, inner);
        auto [sc, sg] = countAndGap(sq, tol);
        (void)sg;
        out.squareCounts.push_back(sc);
        RealVector sv = singular_values(sq);
        out.squareSigmaMin.push_back(sv.size() ? sv(sv.size() - 1) : 0.0);
    }

    analyzeTrack(out.kernel, tol);
    analyzeTrack(out.cokernel, tol);

    const bool kFin = out.kernel.estimate.has_value();
    const bool cFin = out.cokernel.estimate.has_value();
    if (kFin && cFin) {
        out.verdict = FredholmVerdict::Fredholm;
        out.note = "stable kernel and cokernel counts with stable gaps";
    } else if (kFin && out.cokernel.infinite) {
        out.verdict = FredholmVerdict::PlusNotFredholm;
        out.note = "stable kernel count, growing cokernel count";
    } else if (out.kernel.infinite && cFin) {
        out.verdict = FredholmVerdict::MinusNotFredholm;
        out.note = "growing kernel count, stable cokernel count";
    } else if (out.kernel.infinite && out.cokernel.infinite) {
        out.verdict = FredholmVerdict::NotSemiFredholm;
        out.note = "near-kernel counts grow on both sides";
    } else if (out.kernel.gapVanishing && out.cokernel.gapVanishing && out.kernel.countStable &&
               out.cokernel.countStable) {
        out.verdict = FredholmVerdict::NotSemiFredholm;
        out.note = "lowest singular values decay on both sides without localized kernel";
    } else {
        out.verdict = FredholmVerdict::Undecided;
        out.note = "no stable pattern at this tolerance; refine radii or tol";
    }
    return out;
}

}  // namespace bandlab
