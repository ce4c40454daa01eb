#pragma once

#include <string>

#include "bandlab/band_operator.hpp"

namespace bandlab {

/// Asymptotic behavior of one coordinate of a direction h_n:
/// off to +/- infinity with a stabilized residue (phase) modulo the relevant
/// coefficient period, or pinned to a fixed offset (2-D only).
struct AxisTail {
    enum class Kind { PlusInf, MinusInf, Fixed };
    Kind kind = Kind::PlusInf;
    std::int64_t value = 0;  // phase for +/-inf, offset for Fixed

    static AxisTail plusInf(std::int64_t phase = 0) { return {Kind::PlusInf, phase}; }
    static AxisTail minusInf(std::int64_t phase = 0) { return {Kind::MinusInf, phase}; }
    static AxisTail fixed(std::int64_t offset) { return {Kind::Fixed, offset}; }

    std::string label() const;
};

/// A direction along which shifted copies V_{-h_n} A V_{h_n} are followed:
/// symbolic per-axis tails, or an explicit sequence of lattice points whose
/// phases must stabilize.
class Direction {
public:
    static Direction tails(std::vector<AxisTail> axes);
    static Direction explicitSequence(std::vector<MultiIndex> points);

    bool isExplicit() const { return !points_.empty(); }
    const std::vector<AxisTail>& axes() const { return axes_; }
    const std::vector<MultiIndex>& points() const { return points_; }

    std::string label() const;

private:
    Direction() = default;
    std::vector<AxisTail> axes_;
    std::vector<MultiIndex> points_;
};

/// Diagonal-wise symbolic limit of V_{-h} A V_h along the direction: finite
/// support parts vanish, eventually periodic parts collapse to the periodic
/// tail at the chosen end with the phase applied.
///
/// Requires declared coefficient classes. An explicit direction is first
/// classified per axis against the operator's tail periods and rejected when
/// its phases do not stabilize.
BandOperator limit_operator(const BandOperator& A, const Direction& dir);

struct SpectrumEntry {
    BandOperator op{1, 1};
    std::vector<std::string> directions;  // which tail combinations produced it
    int orbitId = 0;
    bool orbitUnderShifts = false;  // entry stands for all its shifted copies
    std::vector<int> invariantAxes;
};

struct OperatorSpectrum {
    std::vector<SpectrumEntry> entries;
    std::size_t size() const { return entries.size(); }
};

/// Enumerate all tail/phase combinations, deduplicate equal representatives
/// and link shifted copies into orbits. For Z^2 the axis-aligned and quadrant
/// directions are enumerated, with one representative per fixed-axis orbit.
OperatorSpectrum operator_spectrum(const BandOperator& A);

/// Membership up to the recorded orbit structure.
bool spectrum_contains(const OperatorSpectrum& spec, const BandOperator& C, double tol = 1e-10);

/// Defect table of ||P_m(V_{-h_n} A V_{h_n} - B)|| + ||(V_{-h_n} A V_{h_n} - B) P_m||,
/// evaluated exactly on bandwidth-dilated windows.
struct PStrongRow {
    std::size_t step = 0;
    MultiIndex h;
    std::int64_t window = 0;
    double defect = 0.0;
};
std::vector<PStrongRow> verify_pstrong(const BandOperator& A, const std::vector<MultiIndex>& h,
                                       const BandOperator& B, const std::vector<std::int64_t>& windows,
                                       NormTag t);

/// Check that the spectrum of the adjoint equals the adjoint of the spectrum
/// (diagonal data and orbit sizes).
struct AdjointSpectrumReport {
    bool equal = false;
    std::size_t adjointSpectrumSize = 0;
    std::size_t spectrumAdjointSize = 0;
    std::string detail;
};
AdjointSpectrumReport adjoint_spectrum_check(const BandOperator& A);

}  // namespace bandlab
