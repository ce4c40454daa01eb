#pragma once

#include <optional>

#include "bandlab/fredholm.hpp"

namespace bandlab {

/// Canonical operator instances with expected verdicts, wired to every
/// checker. Conventions: the nonnegative half-line contains 0, the negative
/// half-line starts at -1.
struct GalleryExpectations {
    std::optional<FredholmVerdict> sweep;
    std::map<std::string, TV> ladder;  // expected verdicts per condition key
    std::optional<std::size_t> spectrumSize;
    std::vector<std::string> notes;
};

struct GalleryCase {
    std::string name;
    std::string description;
    BandOperator op{1, 1};
    std::optional<OperatorSpectrum> declaredSpectrum;  // for undeclared coefficient classes
    GalleryExpectations expected;
    bool runSweep = true;
    bool runLadder = true;
};

std::vector<std::string> gallery_names();
GalleryCase build_example(const std::string& name);

struct GalleryCheckRow {
    enum class Outcome { Pass, ToleranceSensitive, Fail };
    std::string check;
    std::string expected;
    std::string observed;
    Outcome outcome = Outcome::Fail;
};

struct GalleryCaseResult {
    std::string name;
    bool pass = true;
    std::vector<GalleryCheckRow> rows;
};

struct GalleryReport {
    std::vector<GalleryCaseResult> cases;
    bool allPass = true;
};

struct GalleryOptions {
    double tol = 1e-6;
    std::vector<std::int64_t> radii1d{8, 16, 32, 64};
    std::vector<std::int64_t> radii2d{4, 6, 8, 10};
};

GalleryCaseResult run_gallery_case(const std::string& name, const GalleryOptions& opts = {});
GalleryReport run_gallery(const GalleryOptions& opts = {});

std::string renderText(const GalleryReport& report);

}  // namespace bandlab
