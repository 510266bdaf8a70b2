#include "cstar/io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace cstar {

namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void parseFail(const std::string& origin, const std::string& text,
                            const nlohmann::json::parse_error& e) {
  // nlohmann reports a byte offset; convert it to line/column
  size_t line = 1, col = 1;
  const size_t stop = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
  for (size_t i = 0; i < stop; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw InputError(origin + ": JSON parse error at line " + std::to_string(line) +
                   ", column " + std::to_string(col) + ": " + e.what());
}

void requireKeys(const Json& j, std::initializer_list<const char*> allowed,
                 const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw InputError(where + ": unknown key \"" + key + "\"");
  }
  for (const char* a : allowed)
    if (!j.contains(a)) throw InputError(where + ": missing key \"" + a + "\"");
}

Complex complexFromPair(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError(where + ": complex values are [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json complexToPair(Complex c) { return Json::array({c.real(), c.imag()}); }

MultiIndex alphaFromJson(const Json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw InputError(where + ": \"alpha\" must have n entries");
  std::vector<int> e;
  e.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 0)
      throw InputError(where + ": \"alpha\" entries must be nonnegative integers");
    e.push_back(v.get<int>());
  }
  return MultiIndex(std::move(e));
}

CVector fixedPointFromJson(const Json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw InputError("fixed_point: expected n [re, im] pairs");
  CVector p(n);
  for (int i = 0; i < n; ++i) p[i] = complexFromPair(j[static_cast<size_t>(i)], "fixed_point");
  return p;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parseFail(origin, text, e);
  }
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

ActionSpec action_spec_from_json(const Json& j) {
  requireKeys(j, {"format", "n", "kind", "fixed_point", "coords"}, "action spec");
  if (!j["format"].is_number_integer() || j["format"].get<int>() != kFormatVersion)
    throw InputError("action spec: unsupported format version");
  if (!j["n"].is_number_integer() || j["n"].get<int>() < 1)
    throw InputError("action spec: \"n\" must be a positive integer");
  const int n = j["n"].get<int>();
  const std::string kind = j["kind"].get<std::string>();
  const CVector p = fixedPointFromJson(j["fixed_point"], n);
  if (!j["coords"].is_array() || static_cast<int>(j["coords"].size()) != n)
    throw InputError("action spec: \"coords\" must have n entries");

  if (kind == "closed_form") {
    std::vector<LaurentCoeffPoly> coords;
    coords.reserve(static_cast<size_t>(n));
    for (const auto& cj : j["coords"]) {
      requireKeys(cj, {"terms"}, "coordinate");
      LaurentCoeffPoly poly(n);
      for (const auto& tj : cj["terms"]) {
        requireKeys(tj, {"alpha", "laurent"}, "term");
        const MultiIndex alpha = alphaFromJson(tj["alpha"], n, "term");
        LaurentPoly c;
        for (const auto& lj : tj["laurent"]) {
          requireKeys(lj, {"k", "re", "im"}, "laurent term");
          c.addTerm(lj["k"].get<int>(),
                    Complex(lj["re"].get<double>(), lj["im"].get<double>()));
        }
        poly.addTerm(alpha, c);
      }
      coords.push_back(std::move(poly));
    }
    return ActionSpec::closedForm(ActionPoly(std::move(coords)), p);
  }
  if (kind == "vector_field") {
    std::vector<Poly> coords;
    coords.reserve(static_cast<size_t>(n));
    for (const auto& cj : j["coords"]) {
      requireKeys(cj, {"terms"}, "coordinate");
      Poly poly(n);
      for (const auto& tj : cj["terms"]) {
        requireKeys(tj, {"alpha", "re", "im"}, "term");
        poly.addTerm(alphaFromJson(tj["alpha"], n, "term"),
                     Complex(tj["re"].get<double>(), tj["im"].get<double>()));
      }
      coords.push_back(std::move(poly));
    }
    return ActionSpec::vectorField(PolyMap(std::move(coords)), p);
  }
  throw InputError("action spec: \"kind\" must be \"closed_form\" or \"vector_field\"");
}

Json action_spec_to_json(const ActionSpec& spec) {
  const int n = spec.dim();
  Json j;
  j["format"] = kFormatVersion;
  j["n"] = n;
  j["kind"] = spec.kind == ActionKind::ClosedForm ? "closed_form" : "vector_field";
  Json fp = Json::array();
  for (int i = 0; i < n; ++i) fp.push_back(complexToPair(spec.fixedPoint[i]));
  j["fixed_point"] = fp;

  Json coords = Json::array();
  if (spec.kind == ActionKind::ClosedForm) {
    for (int i = 0; i < n; ++i) {
      Json terms = Json::array();
      for (const auto& [alpha, c] : spec.closed->coord(i).terms()) {
        Json laurent = Json::array();
        for (const auto& [k, v] : c.terms())
          laurent.push_back({{"k", k}, {"re", v.real()}, {"im", v.imag()}});
        terms.push_back({{"alpha", alpha.exponents()}, {"laurent", laurent}});
      }
      coords.push_back({{"terms", terms}});
    }
  } else {
    for (int i = 0; i < n; ++i) {
      Json terms = Json::array();
      for (const auto& [alpha, c] : spec.field->coord(i).terms())
        terms.push_back({{"alpha", alpha.exponents()}, {"re", c.real()}, {"im", c.imag()}});
      coords.push_back({{"terms", terms}});
    }
  }
  j["coords"] = coords;
  return j;
}

ActionSpec load_action_spec(const std::string& path) {
  return action_spec_from_json(parse_json_file(path));
}

Json polymap_to_json(const PolyMap& F, const CVector& fixedPoint) {
  const int n = F.dim();
  Json j;
  j["format"] = kFormatVersion;
  j["n"] = n;
  j["kind"] = "polynomial_map";
  Json fp = Json::array();
  for (int i = 0; i < n; ++i) fp.push_back(complexToPair(fixedPoint[i]));
  j["fixed_point"] = fp;
  Json coords = Json::array();
  for (int i = 0; i < n; ++i) {
    Json terms = Json::array();
    for (const auto& [alpha, c] : F.coord(i).terms())
      terms.push_back({{"alpha", alpha.exponents()}, {"re", c.real()}, {"im", c.imag()}});
    coords.push_back({{"terms", terms}});
  }
  j["coords"] = coords;
  return j;
}

std::pair<PolyMap, CVector> polymap_from_json(const Json& j) {
  requireKeys(j, {"format", "n", "kind", "fixed_point", "coords"}, "polynomial map");
  if (j["format"].get<int>() != kFormatVersion)
    throw InputError("polynomial map: unsupported format version");
  if (j["kind"].get<std::string>() != "polynomial_map")
    throw InputError("polynomial map: \"kind\" must be \"polynomial_map\"");
  const int n = j["n"].get<int>();
  const CVector p = fixedPointFromJson(j["fixed_point"], n);
  if (!j["coords"].is_array() || static_cast<int>(j["coords"].size()) != n)
    throw InputError("polynomial map: \"coords\" must have n entries");
  std::vector<Poly> coords;
  coords.reserve(static_cast<size_t>(n));
  for (const auto& cj : j["coords"]) {
    requireKeys(cj, {"terms"}, "coordinate");
    Poly poly(n);
    for (const auto& tj : cj["terms"]) {
      requireKeys(tj, {"alpha", "re", "im"}, "term");
      poly.addTerm(alphaFromJson(tj["alpha"], n, "term"),
                   Complex(tj["re"].get<double>(), tj["im"].get<double>()));
    }
    coords.push_back(std::move(poly));
  }
  return {PolyMap(std::move(coords)), p};
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot open file for writing");
  out << j.dump(2) << "\n";
}

double require_finite(double v, const std::string& field) {
  if (!std::isfinite(v))
    throw InputError("report: non-finite value in field \"" + field + "\"");
  return v;
}

Json validation_to_json(const ValidationReport& rep) {
  Json j;
  j["kind"] = rep.kind == ActionKind::ClosedForm ? "closed_form" : "vector_field";
  j["pass"] = rep.pass;
  j["sample_count"] = rep.sampleCount;
  j["tolerance"] = require_finite(rep.tolerance, "tolerance");
  if (rep.kind == ActionKind::ClosedForm) {
    j["group_law_max"] = require_finite(rep.groupLawMax, "group_law_max");
    j["identity_max"] = require_finite(rep.identityMax, "identity_max");
    j["identity_coeff_max"] = require_finite(rep.identityCoeffMax, "identity_coeff_max");
    j["fixed_point_max"] = require_finite(rep.fixedPointMax, "fixed_point_max");
  } else {
    j["periodicity_max"] = require_finite(rep.periodicityMax, "periodicity_max");
    j["generator_at_fixed_point"] =
        require_finite(rep.generatorAtFixedPoint, "generator_at_fixed_point");
  }
  return j;
}

Json weights_to_json(const WeightData& w) {
  Json j;
  Json lam = Json::array();
  for (int i = 0; i < static_cast<int>(w.weights.size()); ++i) lam.push_back(w.weights[i]);
  j["weights"] = lam;
  j["residual"] = require_finite(w.residual, "residual");
  Json basis = Json::array();
  for (int i = 0; i < w.basis.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < w.basis.cols(); ++k) row.push_back(complexToPair(w.basis(i, k)));
    basis.push_back(row);
  }
  j["basis"] = basis;
  return j;
}

Json classification_to_json(const FixedPointClass& cls) {
  Json j;
  j["tag"] = to_string(cls.tag);
  if (cls.tag == FixedPointTag::Dicritical) j["sign"] = to_string(cls.sign);
  return j;
}

Json conjugacy_to_json(const ConjugacyReport& rep) {
  Json j;
  j["max_residual"] = require_finite(rep.maxResidual, "max_residual");
  j["mean_residual"] = require_finite(rep.meanResidual, "mean_residual");
  j["sample_count"] = rep.sampleCount;
  j["worst_z"] = complexToPair(rep.worstZ);
  Json wx = Json::array();
  for (int i = 0; i < static_cast<int>(rep.worstX.size()); ++i)
    wx.push_back(complexToPair(rep.worstX[i]));
  j["worst_x"] = wx;
  return j;
}

}  // namespace cstar
