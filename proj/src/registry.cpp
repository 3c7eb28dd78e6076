// Copyright 2026 The dilatlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dilatlab/registry.hpp"

#include <charconv>
#include <memory>

#include "dilatlab/error.hpp"
#include "dilatlab/euclidean.hpp"
#include "dilatlab/operations.hpp"

namespace dilatlab {

namespace {

[[noreturn]] void unknown(std::string_view id) {
  throw Error(ErrorCode::unknown_name, "no structure named '" + std::string(id) + "'");
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

template <class T>
T parse_number(std::string_view text, std::string_view id) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) unknown(id);
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

// conical:<group>[:<norm>] with group heisenberg, abelian:N or engel.
GroupPtr conical_group(std::string_view id) {
  std::string_view rest = id.substr(std::string_view("conical:").size());
  std::string group;
  NormVariant norm = NormVariant::layer_quasi;
  std::string_view norm_text;
  if (starts_with(rest, "heisenberg")) {
    group = "heisenberg:1";
    norm = NormVariant::koranyi;
    rest.remove_prefix(std::string_view("heisenberg").size());
  } else if (starts_with(rest, "engel")) {
    group = "engel";
    rest.remove_prefix(std::string_view("engel").size());
  } else if (starts_with(rest, "abelian:")) {
    rest.remove_prefix(std::string_view("abelian:").size());
    const std::size_t colon = rest.find(':');
    const std::string_view n = rest.substr(0, colon);
    if (parse_number<int>(n, id) < 1) unknown(id);
    group = "abelian:" + std::string(n);
    rest = colon == std::string_view::npos ? std::string_view{} : rest.substr(colon);
  } else {
    unknown(id);
  }
  if (!rest.empty()) {
    if (rest.front() != ':') unknown(id);
    norm_text = rest.substr(1);
    try {
      norm = parse_norm_variant(norm_text);
    } catch (const Error&) {
      unknown(id);
    }
  }
  auto carnot = std::make_shared<const CarnotGroup>(builtin_group(group));
  return std::make_shared<CarnotConicalGroup>(std::move(carnot), norm);
}

GroupPtr diagonal_contraction(std::string_view id) {
  const auto parts = split(id.substr(std::string_view("contraction:diag:").size()), ',');
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(parts.size()),
                                            static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const double d = parse_number<double>(parts[i], id);
    if (!(d > 0.0 && d < 1.0)) unknown(id);
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d;
  }
  return from_contraction_matrix(m, std::string(id));
}

}  // namespace

GroupPtr make_group(std::string_view id) {
  if (starts_with(id, "conical:")) return conical_group(id);
  if (id == "gwd:heisenberg-isotropic") return std::make_shared<IsotropicHeisenberg>();
  if (starts_with(id, "contraction:diag:")) return diagonal_contraction(id);
  if (starts_with(id, "contraction:matrix:")) {
    const std::string path(id.substr(std::string_view("contraction:matrix:").size()));
    return from_contraction_matrix(load_matrix_file(path), std::string(id));
  }
  unknown(id);
}

StructurePtr make_structure(std::string_view id) {
  if (starts_with(id, "euclidean:")) {
    const int n = parse_number<int>(id.substr(std::string_view("euclidean:").size()), id);
    if (n < 1) unknown(id);
    return std::make_shared<AffineStructure>(static_cast<std::size_t>(n));
  }
  if (id == "chart:2") return ChartPerturbedStructure::make_default();
  if (starts_with(id, "chart:")) {
    const auto parts = split(id.substr(std::string_view("chart:").size()), ':');
    if (parts.size() != 3) unknown(id);
    const int n = parse_number<int>(parts[0], id);
    const double eta = parse_number<double>(parts[1], id);
    const auto seed = parse_number<std::uint64_t>(parts[2], id);
    if (n < 1) unknown(id);
    return ChartPerturbedStructure::make_seeded(static_cast<std::size_t>(n), eta, seed);
  }
  if (starts_with(id, "shifted:")) {
    const std::string_view rest = id.substr(std::string_view("shifted:").size());
    const std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) unknown(id);
    const double mu = parse_number<double>(rest.substr(0, colon), id);
    StructurePtr base = make_structure(rest.substr(colon + 1));
    if (!(mu > 0.0 && mu <= 1.0)) unknown(id);
    const Scale scale = base->scale_kind() == ScaleKind::dyadic
                            ? ScaleGroup(ScaleKind::dyadic).make(mu)
                            : Scale::continuous(mu);
    return shifted_structure(base, base->default_center(), scale);
  }
  if (starts_with(id, "conical:") || starts_with(id, "gwd:") ||
      starts_with(id, "contraction:")) {
    std::string canonical(id);
    if (id == "conical:heisenberg") canonical = "conical:heisenberg:koranyi";
    return as_dilatation_structure(make_group(id), canonical);
  }
  unknown(id);
}

std::vector<std::string> registered_examples() {
  return {"euclidean:2",
          "chart:2",
          "chart:3:0.05:7",
          "conical:heisenberg:koranyi",
          "conical:heisenberg:layer-quasi",
          "conical:abelian:3",
          "conical:engel",
          "gwd:heisenberg-isotropic",
          "contraction:diag:0.5,0.25",
          "contraction:matrix:FILE",
          "shifted:0.5:euclidean:2",
          "shifted:0.5:chart:2"};
}

}  // namespace dilatlab
