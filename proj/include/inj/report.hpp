#pragma once

#include <string>

#include <json.hpp>

#include "inj/injectivity.hpp"

namespace inj {

struct ReportOptions {
  Caps caps;
  /// Wall time varies between runs; off by default so reports are reproducible.
  bool timings = false;
  /// Free-form context lines, e.g. the kinetics used for a network.
  std::vector<std::string> notes;
};

using Json = nlohmann::ordered_json;

Json matrix_json(const QMatrix& m);
Json vector_json(const QVector& v);
Json class_json(const MatrixClass& c);
Json problem_json(const Problem& p);
Json witness_json(const SingularWitness& w);
Json analysis_json(const DetAnalysis& d);

/// status, method, certificate, diagnostics and an echo of the inputs.
Json verdict_json(const Verdict& v, const Problem& p, const ReportOptions& opt = {});

/// Pretty-printed JSON followed by a newline.
std::string render(const Json& j);

}  // namespace inj
