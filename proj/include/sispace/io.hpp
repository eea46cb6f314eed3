#pragma once
// JSON (de)serialization for scenes, sequences, generators, operators and
// reports. All floats are normalized to 12 significant digits before emission
// so identical inputs produce byte-identical output.

#include <string>

#include <json.hpp>

#include "sispace/convcalc.hpp"
#include "sispace/ddesolver.hpp"
#include "sispace/frames.hpp"
#include "sispace/multproduct.hpp"
#include "sispace/spectral.hpp"
#include "sispace/wavefront.hpp"

namespace sispace::io {

using json = nlohmann::json;

// 12-significant-digit normalization (and the json number carrying it)
std::string fmt_double(double x);
json num(double x);

json coeffs_to_json(const CoeffSeq& c);
CoeffSeq coeffs_from_json(const json& j);

json grid_to_json(const GridSpec& g);
GridSpec grid_from_json(const json& j);

json generator_to_json(const Generator& g);
Generator generator_from_json(const json& j);

// Scene = SIFunction + grid
struct Scene {
  SIFunction f;
  GridSpec grid;
};
json scene_to_json(const Scene& s);
Scene scene_from_json(const json& j);

json frame_report_to_json(const FrameReport& r);
json projection_to_json(const ProjectionResult& r, const GridSpec& grid);
json convolution_to_json(const ConvolutionResult& r, const GridSpec& grid);
json recovery_to_json(const RecoveryResult& r);
json mikhlin_to_json(const MikhlinReport& r);
json ellipticity_to_json(const EllipticityEstimate& e);

MultiplierSymbol multiplier_from_json(const json& j);
PeriodicMultiplier periodic_from_json(const json& j);
DelayDiffOperator operator_from_json(const json& j);

json wfset_to_json(const WFSet& w);
WFSet wfset_from_json(const json& j);

json load_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);
// canonical serialization: 2-space indent, trailing newline
std::string dump(const json& j);

}  // namespace sispace::io
