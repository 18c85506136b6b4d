#include "cobar/simplicial.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace cobar {

namespace {

using Step = SimplicialOperator::Step;
using Kind = SimplicialOperator::Kind;

// Written order: leftmost step is applied last.
std::vector<Step> normalize_written(std::vector<Step> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      Step& x = w[k];
      Step& y = w[k + 1];
      if (x.kind == Kind::Face && y.kind == Kind::Degeneracy) {
        const int i = x.index;
        const int j = y.index;
        if (i < j) {
          x = {Kind::Degeneracy, j - 1};
          y = {Kind::Face, i};
        } else if (i == j || i == j + 1) {
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(k), w.begin() + static_cast<std::ptrdiff_t>(k) + 2);
        } else {
          x = {Kind::Degeneracy, j};
          y = {Kind::Face, i - 1};
        }
        changed = true;
        break;
      }
      if (x.kind == Kind::Face && y.kind == Kind::Face && x.index >= y.index) {
        const int a = x.index;
        const int b = y.index;
        x = {Kind::Face, b};
        y = {Kind::Face, a + 1};
        changed = true;
      } else if (x.kind == Kind::Degeneracy && y.kind == Kind::Degeneracy && x.index <= y.index) {
        const int a = x.index;
        const int b = y.index;
        x = {Kind::Degeneracy, b + 1};
        y = {Kind::Degeneracy, a};
        changed = true;
      }
    }
  }
  return w;
}

int check_steps(const std::vector<Step>& applied, int source_dim) {
  if (source_dim < 0) throw std::invalid_argument("negative simplex dimension");
  int dim = source_dim;
  for (const Step& s : applied) {
    if (s.index < 0 || s.index > dim || (s.kind == Kind::Face && dim == 0)) {
      std::ostringstream msg;
      msg << (s.kind == Kind::Face ? "d_" : "s_") << s.index << " is not defined on dimension " << dim;
      throw std::invalid_argument(msg.str());
    }
    dim += s.kind == Kind::Face ? -1 : 1;
  }
  return dim;
}

}  // namespace

SimplicialOperator SimplicialOperator::identity(int dim) { return from_steps({}, dim); }

SimplicialOperator SimplicialOperator::face(int i, int source_dim) {
  return from_steps({{Kind::Face, i}}, source_dim);
}

SimplicialOperator SimplicialOperator::degeneracy(int j, int source_dim) {
  return from_steps({{Kind::Degeneracy, j}}, source_dim);
}

SimplicialOperator SimplicialOperator::from_steps(const std::vector<Step>& steps, int source_dim) {
  check_steps(steps, source_dim);
  std::vector<Step> written(steps.rbegin(), steps.rend());
  written = normalize_written(std::move(written));
  SimplicialOperator op;
  op.source_dim_ = source_dim;
  for (const Step& s : written) {
    (s.kind == Kind::Face ? op.faces_ : op.degeneracies_).push_back(s.index);
  }
  return op;
}

SimplicialOperator SimplicialOperator::from_normal_form(std::vector<int> degeneracies, std::vector<int> faces,
                                                        int source_dim) {
  SimplicialOperator op;
  op.degeneracies_ = std::move(degeneracies);
  op.faces_ = std::move(faces);
  op.source_dim_ = source_dim;
  for (std::size_t k = 1; k < op.degeneracies_.size(); ++k) {
    if (op.degeneracies_[k - 1] <= op.degeneracies_[k])
      throw std::invalid_argument("degeneracy indices must be strictly decreasing");
  }
  for (std::size_t k = 1; k < op.faces_.size(); ++k) {
    if (op.faces_[k - 1] >= op.faces_[k]) throw std::invalid_argument("face indices must be strictly increasing");
  }
  check_steps(op.steps(), source_dim);
  return op;
}

std::vector<Step> SimplicialOperator::steps() const {
  std::vector<Step> out;
  out.reserve(faces_.size() + degeneracies_.size());
  for (auto it = faces_.rbegin(); it != faces_.rend(); ++it) out.push_back({Kind::Face, *it});
  for (auto it = degeneracies_.rbegin(); it != degeneracies_.rend(); ++it) out.push_back({Kind::Degeneracy, *it});
  return out;
}

SimplicialOperator compose(const SimplicialOperator& first, const SimplicialOperator& second) {
  if (first.target_dim() != second.source_dim()) {
    throw std::invalid_argument("compose: target dimension " + std::to_string(first.target_dim()) +
                                " does not match source dimension " + std::to_string(second.source_dim()));
  }
  std::vector<Step> applied = first.steps();
  const std::vector<Step> tail = second.steps();
  applied.insert(applied.end(), tail.begin(), tail.end());
  return SimplicialOperator::from_steps(applied, first.source_dim());
}

std::ostream& operator<<(std::ostream& os, const SimplicialOperator& op) {
  bool any = false;
  for (int j : op.degeneracies()) {
    os << (any ? " " : "") << "s" << j;
    any = true;
  }
  for (int i : op.faces()) {
    os << (any ? " " : "") << "d" << i;
    any = true;
  }
  if (!any) os << "id";
  return os << " [" << op.source_dim() << "->" << op.target_dim() << "]";
}

// ---------------------------------------------------------------------------

ReducedSimplicialSet::ReducedSimplicialSet(std::string name, std::vector<SimplexSpec> simplices)
    : name_(std::move(name)) {
  std::stable_sort(simplices.begin(), simplices.end(),
                   [](const SimplexSpec& a, const SimplexSpec& b) { return a.dim < b.dim; });
  names_.push_back("*");
  dims_.push_back(0);
  faces_.emplace_back();
  by_name_.emplace("*", kBasepoint);
  for (const SimplexSpec& s : simplices) {
    if (s.dim <= 0) throw InputError("simplex '" + s.id + "': a reduced simplicial set has only the vertex '*' in dimension 0");
    if (s.id.empty() || s.id == "*") throw InputError("invalid simplex id '" + s.id + "'");
    if (!by_name_.emplace(s.id, static_cast<SimplexId>(names_.size())).second)
      throw InputError("duplicate simplex id '" + s.id + "'");
    names_.push_back(s.id);
    dims_.push_back(s.dim);
  }
  for (const SimplexSpec& s : simplices) {
    if (s.faces.size() != static_cast<std::size_t>(s.dim) + 1) {
      throw InputError("simplex '" + s.id + "' of dimension " + std::to_string(s.dim) + " needs " +
                       std::to_string(s.dim + 1) + " faces, got " + std::to_string(s.faces.size()));
    }
    std::vector<SimplexRef> refs;
    for (const FaceSpec& f : s.faces) {
      auto it = by_name_.find(f.base);
      if (it == by_name_.end()) throw InputError("simplex '" + s.id + "': unknown face base '" + f.base + "'");
      const int base_dim = dims_[it->second];
      try {
        SimplicialOperator::from_normal_form(f.degeneracies, {}, base_dim);
      } catch (const std::invalid_argument& e) {
        throw InputError("simplex '" + s.id + "': bad degeneracy word on '" + f.base + "': " + e.what());
      }
      refs.push_back(SimplexRef{f.degeneracies, it->second, base_dim + static_cast<int>(f.degeneracies.size())});
    }
    faces_.push_back(std::move(refs));
  }
}

SimplexId ReducedSimplicialSet::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) throw std::out_of_range("unknown simplex '" + std::string(name) + "'");
  return it->second;
}

const SimplexRef& ReducedSimplicialSet::face(SimplexId id, int i) const {
  const auto& fs = faces_.at(id);
  if (i < 0 || static_cast<std::size_t>(i) >= fs.size())
    throw std::out_of_range("face index " + std::to_string(i) + " out of range for '" + names_.at(id) + "'");
  return fs[static_cast<std::size_t>(i)];
}

int ReducedSimplicialSet::max_dim() const { return *std::max_element(dims_.begin(), dims_.end()); }

std::vector<SimplexId> ReducedSimplicialSet::simplices_of_dim(int dim) const {
  std::vector<SimplexId> out;
  for (SimplexId id = 0; id < dims_.size(); ++id)
    if (dims_[id] == dim) out.push_back(id);
  return out;
}

std::size_t ReducedSimplicialSet::count_of_dim(int dim) const {
  return static_cast<std::size_t>(std::count(dims_.begin(), dims_.end(), dim));
}

std::string ReducedSimplicialSet::describe(const SimplexRef& r) const {
  std::string out;
  for (int j : r.degeneracies) out += "s" + std::to_string(j) + " ";
  return out + names_.at(r.base);
}

// ---------------------------------------------------------------------------

SimplexRef apply_operator(const SimplicialOperator& op, const SimplexRef& r, const ReducedSimplicialSet& K) {
  if (op.source_dim() != r.dim) throw std::invalid_argument("operator source dimension does not match simplex");
  const int base_dim = K.dim(r.base);
  const auto total = compose(SimplicialOperator::from_normal_form(r.degeneracies, {}, base_dim), op);
  if (total.faces().empty()) return SimplexRef{total.degeneracies(), r.base, total.target_dim()};
  std::vector<int> rest = total.faces();
  const int last = rest.back();
  rest.pop_back();
  const SimplexRef& f = K.face(r.base, last);
  if (f.dim != base_dim - 1) {
    throw std::invalid_argument("face d" + std::to_string(last) + " of '" + K.id_name(r.base) +
                                "' has the wrong dimension");
  }
  return apply_operator(SimplicialOperator::from_normal_form(total.degeneracies(), std::move(rest), base_dim - 1), f, K);
}

SimplexRef apply_face(int i, const SimplexRef& r, const ReducedSimplicialSet& K) {
  if (r.dim < 1 || i < 0 || i > r.dim)
    throw std::out_of_range("face index " + std::to_string(i) + " out of range for dimension " + std::to_string(r.dim));
  return apply_operator(SimplicialOperator::face(i, r.dim), r, K);
}

SimplexRef restrict_to_vertices(const SimplexRef& r, const std::vector<int>& vertices, const ReducedSimplicialSet& K) {
  std::vector<int> faces;
  std::size_t k = 0;
  for (int v = 0; v <= r.dim; ++v) {
    if (k < vertices.size() && vertices[k] == v) {
      ++k;
    } else {
      faces.push_back(v);
    }
  }
  if (k != vertices.size()) throw std::out_of_range("vertex list is not a strictly increasing subset");
  return apply_operator(SimplicialOperator::from_normal_form({}, std::move(faces), r.dim), r, K);
}

std::pair<SimplexRef, SimplexRef> front_back_restrictions(const SimplexRef& r, int i, const ReducedSimplicialSet& K) {
  if (i < 0 || i > r.dim) throw std::out_of_range("split index " + std::to_string(i) + " out of range");
  std::vector<int> front;
  std::vector<int> back;
  for (int v = 0; v <= i; ++v) front.push_back(v);
  for (int v = i; v <= r.dim; ++v) back.push_back(v);
  return {restrict_to_vertices(r, front, K), restrict_to_vertices(r, back, K)};
}

ValidationReport validate(const ReducedSimplicialSet& K) {
  ValidationReport report;
  for (SimplexId id = 1; id < K.size(); ++id) {
    const int n = K.dim(id);
    bool dims_ok = true;
    for (int i = 0; i <= n; ++i) {
      const SimplexRef& f = K.face(id, i);
      if (f.dim != n - 1) {
        report.errors.push_back("dimension error: d" + std::to_string(i) + "(" + K.id_name(id) + ") = " +
                                K.describe(f) + " has dimension " + std::to_string(f.dim) + ", expected " +
                                std::to_string(n - 1));
        dims_ok = false;
      }
    }
    if (!dims_ok || n < 2) continue;
    for (int j = 1; j <= n; ++j) {
      for (int i = 0; i < j; ++i) {
        try {
          const SimplexRef lhs = apply_face(i, K.face(id, j), K);
          const SimplexRef rhs = apply_face(j - 1, K.face(id, i), K);
          if (!(lhs == rhs)) {
            report.errors.push_back("simplicial identity d" + std::to_string(i) + "d" + std::to_string(j) + " = d" +
                                    std::to_string(j - 1) + "d" + std::to_string(i) + " fails on '" +
                                    K.id_name(id) + "': " + K.describe(lhs) + " != " + K.describe(rhs));
          }
        } catch (const std::exception& e) {
          report.errors.push_back("cannot evaluate d" + std::to_string(i) + "d" + std::to_string(j) + " on '" +
                                  K.id_name(id) + "': " + e.what());
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

int parse_parameter(std::string_view name, std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw InputError("malformed parameter in builtin '" + std::string(name) + "'");
  return value;
}

std::string letter_name(int k, int count) {
  if (count <= 26) return std::string(1, static_cast<char>('a' + k));
  return "e" + std::to_string(k + 1);
}

}  // namespace

ReducedSimplicialSet builtin_space(std::string_view name) {
  std::vector<SimplexSpec> specs;
  auto vertex_edge = [] { return FaceSpec{{0}, "*"}; };
  if (name.starts_with("sphere:")) {
    const int n = parse_parameter(name, name.substr(7));
    if (n < 2) throw InputError("sphere:n needs n >= 2");
    std::vector<int> degs;
    for (int j = n - 2; j >= 0; --j) degs.push_back(j);
    specs.push_back({"s", n, std::vector<FaceSpec>(static_cast<std::size_t>(n) + 1, FaceSpec{degs, "*"})});
  } else if (name.starts_with("wedge-circles:")) {
    const int k = parse_parameter(name, name.substr(14));
    if (k < 1) throw InputError("wedge-circles:k needs k >= 1");
    for (int i = 0; i < k; ++i) specs.push_back({letter_name(i, k), 1, {{{}, "*"}, {{}, "*"}}});
  } else if (name == "torus") {
    for (const char* e : {"a", "b", "c"}) specs.push_back({e, 1, {{{}, "*"}, {{}, "*"}}});
    specs.push_back({"t0", 2, {{{}, "b"}, {{}, "c"}, {{}, "a"}}});
    specs.push_back({"t1", 2, {{{}, "a"}, {{}, "c"}, {{}, "b"}}});
  } else if (name == "rp2") {
    specs.push_back({"a", 1, {{{}, "*"}, {{}, "*"}}});
    specs.push_back({"f", 2, {{{}, "a"}, vertex_edge(), {{}, "a"}}});
  } else {
    throw InputError("unknown builtin space '" + std::string(name) + "'");
  }
  ReducedSimplicialSet K(std::string(name), std::move(specs));
  const auto report = validate(K);
  if (!report.ok()) throw std::logic_error("builtin " + std::string(name) + " is invalid: " + report.errors.front());
  return K;
}

std::vector<std::string> builtin_names() {
  return {"sphere:2", "sphere:3", "sphere:4", "wedge-circles:1", "wedge-circles:2", "wedge-circles:3", "torus", "rp2"};
}

ReducedSimplicialSet parse_simplicial_set(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw InputError("top level must be an object");
    if (!doc.contains("name") || !doc["name"].is_string()) throw InputError("missing string field 'name'");
    if (!doc.contains("simplices") || !doc["simplices"].is_object()) throw InputError("missing object field 'simplices'");
    std::vector<SimplexSpec> specs;
    for (const auto& [key, list] : doc["simplices"].items()) {
      const int dim = parse_parameter("simplices key", key);
      if (!list.is_array()) throw InputError("simplices[\"" + key + "\"] must be an array");
      if (dim == 0) {
        if (list.size() > 1) throw InputError("a reduced simplicial set has exactly one vertex");
        for (const auto& v : list)
          if (v.value("id", std::string("*")) != "*") throw InputError("the vertex must have id '*'");
        continue;
      }
      for (const auto& entry : list) {
        SimplexSpec spec;
        spec.id = entry.at("id").get<std::string>();
        spec.dim = dim;
        for (const auto& f : entry.at("faces")) {
          FaceSpec face;
          face.base = f.at("base").get<std::string>();
          if (f.contains("degeneracies")) face.degeneracies = f["degeneracies"].get<std::vector<int>>();
          spec.faces.push_back(std::move(face));
        }
        specs.push_back(std::move(spec));
      }
    }
    return ReducedSimplicialSet(doc["name"].get<std::string>(), std::move(specs));
  } catch (const json::exception& e) {
    throw InputError(std::string("schema error: ") + e.what());
  }
}

std::string to_json(const ReducedSimplicialSet& K) {
  nlohmann::ordered_json doc;
  doc["name"] = K.name();
  nlohmann::ordered_json simplices = nlohmann::ordered_json::object();
  for (int d = 1; d <= K.max_dim(); ++d) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (SimplexId id : K.simplices_of_dim(d)) {
      nlohmann::ordered_json faces = nlohmann::ordered_json::array();
      for (const SimplexRef& f : K.faces(id)) faces.push_back({{"degeneracies", f.degeneracies}, {"base", K.id_name(f.base)}});
      list.push_back({{"id", K.id_name(id)}, {"faces", faces}});
    }
    if (!list.empty()) simplices[std::to_string(d)] = list;
  }
  doc["simplices"] = simplices;
  return doc.dump(2);
}

}  // namespace cobar
