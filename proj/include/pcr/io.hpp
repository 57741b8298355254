#ifndef PCR_IO_HPP
#define PCR_IO_HPP

#include <string>

#include "pcr/core.hpp"
#include "pcr/diagnostics.hpp"
#include "pcr/distortion.hpp"
#include "pcr/solver.hpp"

#include <json.hpp>

namespace pcr {
namespace io {

/// Thrown for malformed files and unreadable paths (CLI exit code 1).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Binary netpbm, 8-bit, maxval 255. Mask semantics: value >= 128 <=> damaged.
// Label maps: pixel value = 1-based label index, k <= 255.
ColorImage read_ppm(const std::string& path, const GridGeometry& base = {});
void write_ppm(const std::string& path, const ColorImage& img);

std::vector<uint8_t> read_pgm(const std::string& path, int* width, int* height);
void write_pgm(const std::string& path, int width, int height,
               const std::vector<uint8_t>& data);

DamageMask read_mask(const std::string& path, const GridGeometry& geom);
void write_mask(const std::string& path, const DamageMask& mask);

GreyObservation read_grey(const std::string& path, const GridGeometry& geom);
void write_grey(const std::string& path, const GreyObservation& g);

Labeling read_labels(const std::string& path, const GridGeometry& geom);
void write_labels(const std::string& path, const Labeling& l);

/// One line per color, M whitespace-separated decimals in [0,1]; '#' comments.
Palette read_palette(const std::string& path, int channels);
void write_palette(const std::string& path, const Palette& A);

/// CSV rows `t,L`, header optional. The direction e travels in a comment line
/// `# e <c1> <c2> ...`; absent, e defaults to (1,...,1)/sqrt(M).
DistortionTable read_distortion(const std::string& path, int channels);
void write_distortion(const std::string& path, const DistortionTable& tab);

nlohmann::json breakdown_to_json(const EnergyBreakdown& b);
nlohmann::json trace_to_json(const SolveTrace& t);
nlohmann::json regularity_to_json(const RegularityReport& r);
nlohmann::json validation_to_json(const ValidationReport& r);

}  // namespace io
}  // namespace pcr

#endif
