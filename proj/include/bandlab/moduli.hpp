#pragma once

#include <optional>
#include <string>

#include "bandlab/band_operator.hpp"

namespace bandlab {

/// Injection modulus j(M) = inf{||Mx|| : ||x|| = 1} of a dense compression.
/// p=2 works for any shape (smallest singular value); p in {1, inf} requires
/// a square matrix and returns 0 when singular, 1/||M^-1|| otherwise.
double lower_norm(const TruncatedMatrix& M);

/// Surjection modulus via duality: q(M) = j(M^H) in the dual norm.
double surjection_modulus(const TruncatedMatrix& M);

enum class ApproxSide { Left, Right };

/// Lower approximation numbers s_m (m = 1..mMax) of a dense p=2 compression:
/// distance to operators whose kernel (right) or cokernel (left) has
/// dimension >= m. For a rows x cols matrix these are the m-th smallest
/// entries of the singular value list padded with zeros to length cols
/// (right) or rows (left). The list is clamped at the padded length.
std::vector<double> approx_numbers(const TruncatedMatrix& M, int mMax, ApproxSide side);

/// Bernstein-number cross check at p=2. B_m is evaluated through its
/// variational characterization (restriction to a codimension-(m-1) subspace
/// built from singular vectors, plus random competitor subspaces); the report
/// records B_m, sigma_m and the general two-sided bound with its 2^m - 1 gap.
struct SandwichRow {
    int m = 0;
    double sigma = 0.0;      // m-th smallest singular value
    double bernstein = 0.0;  // variational value
    double generalLowerBound = 0.0;
    double slackFactor = 0.0;  // 2^m - 1
    bool equalWithinTol = false;
};
struct SandwichReport {
    std::vector<SandwichRow> rows;
    bool holds = true;
    double maxDeviation = 0.0;
};
SandwichReport sandwich_check(const TruncatedMatrix& M, int mMax, double tol = 1e-10);

/// Sliding-window lower bound profile: for each width-D column window the
/// smallest singular value of the compression whose rows are dilated by the
/// bandwidth. Every profile value is an upper bound for j of the full
/// operator; the minimum is the reported estimate.
struct LowerNormProfile {
    int width = 0;
    std::vector<std::pair<std::int64_t, double>> values;  // (window start, sigma_min)
    double globalMin = 0.0;
};
LowerNormProfile localized_lower_norm(const BandOperator& A, int D, std::int64_t rangeLo,
                                      std::int64_t rangeHi, NormTag t);

/// column compression over an arbitrary window, rows dilated by bandwidth
double column_compression_sigma_min(const BandOperator& A, const Window& colW);

/// Per-radius record of the moduli sweep.
struct ModuliRow {
    std::int64_t radius = 0;
    double j = 0.0;
    double q = 0.0;
    std::vector<double> sigma;  // ascending, p=2 only
    std::vector<double> sRight;
    std::vector<double> sLeft;
    std::vector<bool> stable;  // per m, relative change vs previous radius
};
struct ModuliReport {
    NormTag tag;
    int mMax = 0;
    double tol = 0.0;
    std::vector<ModuliRow> rows;

    std::string toCsv() const;
};
ModuliReport moduli_sweep(const BandOperator& A, const std::vector<std::int64_t>& radii, NormTag t,
                          int mMax, double tol = 1e-6);

enum class FredholmVerdict { Fredholm, PlusNotFredholm, MinusNotFredholm, NotSemiFredholm, Undecided };
const char* verdictName(FredholmVerdict v);

/// One defect side of the sweep: counts of singular values below tol and the
/// first value above them, for the bandwidth-dilated compressions.
struct DefectTrack {
    std::vector<std::int64_t> counts;
    std::vector<double> gaps;
    bool countStable = false;
    bool countGrowing = false;
    bool gapStable = false;
    bool gapVanishing = false;
    bool separated = false;  // gap clears the zero threshold by a safe factor
    std::optional<std::int64_t> estimate;
    bool infinite = false;
};

/// Near-kernel track from column compressions (rows dilated by bandwidth)
/// over growing radii; the cokernel analogue is the same track of the adjoint.
DefectTrack kernel_defect_track(const BandOperator& A, const std::vector<std::int64_t>& radii,
                                double tol);

/// Heuristic finite-section oracle: tracks near-kernel counts of column
/// compressions (kernel side) and row compressions (cokernel side) over
/// growing radii. Finite sections cannot decide Fredholmness in general;
/// the verdict is evidence for cross-validation, not proof.
struct SweepClassification {
    std::vector<std::int64_t> radii;
    double tol = 0.0;
    DefectTrack kernel;
    DefectTrack cokernel;
    std::vector<std::int64_t> squareCounts;  // small singular values of P_n A P_n
    std::vector<double> squareSigmaMin;
    FredholmVerdict verdict = FredholmVerdict::Undecided;
    std::string note;
};
SweepClassification truncation_sweep_classify(const BandOperator& A,
                                              const std::vector<std::int64_t>& radii, double tol);

}  // namespace bandlab
