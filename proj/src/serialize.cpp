#include "rispaces/serialize.hpp"

#include <any>
#include <charconv>
#include <string>

#include "rispaces/error.hpp"

namespace rispaces::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InvalidArgument(std::string("expected an object with field '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw InvalidArgument(std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw InvalidArgument(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number(const json& v) {
  if (!v.is_number()) throw InvalidArgument("expected a number, got " + v.dump());
  return v.get<double>();
}

std::string text(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw InvalidArgument(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Rational rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) return exact_rational(v.get<double>());
  throw InvalidArgument("expected a breakpoint, got " + v.dump());
}

const json& array(const json& v, const char* what) {
  if (!v.is_array()) throw InvalidArgument(std::string(what) + " must be an array");
  return v;
}

void require_valid(const std::vector<std::string>& problems, const std::string& what) {
  if (problems.empty()) return;
  std::string msg = what + " rejected:";
  for (const auto& p : problems) msg += " " + p + ";";
  msg.pop_back();
  throw InvalidArgument(msg);
}

}  // namespace

json to_json(const StepFunction& f) {
  json out = json::array();
  for (const auto& p : f.pieces()) {
    char buf[32];
    const auto end = std::to_chars(buf, buf + sizeof buf, p.value).ptr;
    out.push_back({format_rational(p.left), format_rational(p.right), std::string(buf, end)});
  }
  return out;
}

StepFunction step_function_from_json(const json& j) {
  std::vector<StepPiece> pieces;
  for (const auto& e : array(j, "step function")) {
    if (!e.is_array() || e.size() != 3) throw InvalidArgument("step piece must be [left, right, value]");
    pieces.push_back({rational(e[0]), rational(e[1]), e[2].is_string() ? to_double(rational(e[2])) : number(e[2])});
  }
  return StepFunction(std::move(pieces));
}

json to_json(const PiecewiseLinearMap& sigma) {
  json out = json::array();
  for (const auto& p : sigma.pieces())
    out.push_back({format_rational(p.left), format_rational(p.right), p.slope, p.image_left});
  return out;
}

PiecewiseLinearMap map_from_json(const json& j) {
  std::vector<MapPiece> pieces;
  double image = 0.0;
  for (const auto& e : array(j, "map")) {
    if (!e.is_array() || (e.size() != 3 && e.size() != 4))
      throw InvalidArgument("map piece must be [left, right, slope] or [left, right, slope, image_left]");
    MapPiece p{rational(e[0]), rational(e[1]), number(e[2]), e.size() == 4 ? number(e[3]) : image};
    image = p.image_right();
    pieces.push_back(std::move(p));
  }
  return PiecewiseLinearMap(std::move(pieces));
}

json to_json(const WeightedCompositionOp& op) { return {{"h", to_json(op.h)}, {"sigma", to_json(op.sigma)}}; }

WeightedCompositionOp operator_from_json(const json& j) {
  WeightedCompositionOp op{step_function_from_json(field(j, "h")), map_from_json(field(j, "sigma"))};
  groups::validate(op);
  return op;
}

json to_json(const phi::OrliczFunction& f) {
  return std::visit(
      overloaded{
          [](const phi::Power& g) -> json { return {{"family", "power"}, {"p", g.p}}; },
          [](const phi::LogPeriodic& g) -> json {
            return {{"family", "logperiodic"}, {"p", g.p}, {"eps", g.eps}, {"omega", g.omega}};
          },
          [](const phi::Scaled& g) -> json {
            return {{"family", "scaled"}, {"base", to_json(*g.base)}, {"b", g.b}, {"p", g.p}};
          },
          [](const phi::PiecewiseAffine& g) -> json {
            json knots = json::array();
            for (const auto& [t, v] : g.knots) knots.push_back({t, v});
            return {{"family", "piecewise"}, {"knots", knots}};
          },
          [](const phi::ExpressionFamily& g) -> json { return {{"family", "expr"}, {"src", g.source}}; },
          [](const phi::Tilde& g) -> json { return {{"family", "tilde"}, {"base", to_json(*g.base)}}; },
          [](const phi::Inverse& g) -> json { return {{"family", "inverse"}, {"base", to_json(*g.base)}}; },
          [](const phi::Custom& g) -> json {
            if (const auto* w = std::any_cast<norms::WeightDerivedPayload>(&g.payload))
              return {{"family", "weight_to_F"}, {"w", to_json(w->w)}, {"G", to_json(w->G)}};
            throw InvalidArgument("function '" + g.kind + "' has no serialized form");
          },
      },
      f.family());
}

phi::OrliczFunction function_from_json(const json& j) {
  const std::string family = text(j, "family");
  if (family == "power") return phi::power(number(j, "p"));
  if (family == "logperiodic") return phi::log_periodic(number(j, "p"), number(j, "eps"), number(j, "omega"));
  if (family == "scaled")
    return phi::scaled(function_from_json(field(j, "base")), number(j, "b"), number(j, "p"));
  if (family == "piecewise") {
    std::vector<std::pair<double, double>> knots;
    for (const auto& k : array(field(j, "knots"), "knots")) {
      if (!k.is_array() || k.size() != 2) throw InvalidArgument("knot must be [t, value]");
      knots.emplace_back(number(k[0]), number(k[1]));
    }
    return phi::piecewise_affine(std::move(knots));
  }
  if (family == "expr") return phi::expression(text(j, "src"));
  if (family == "tilde") return phi::tilde(function_from_json(field(j, "base")));
  if (family == "inverse") return phi::inverse_function(function_from_json(field(j, "base")));
  if (family == "weight_to_F")
    return norms::weight_to_F(weight_from_json(field(j, "w")), phi_function_from_json(field(j, "G")));
  throw InvalidArgument("unknown function family '" + family + "'");
}

phi::OrliczFunction orlicz_from_json(const json& j) {
  auto f = function_from_json(j);
  require_valid(phi::validate(f, phi::Axioms::Orlicz), "Orlicz function");
  return f;
}

phi::PhiFunction phi_function_from_json(const json& j) {
  auto f = function_from_json(j);
  require_valid(phi::validate(f, phi::Axioms::PhiFunction), "phi-function");
  return f;
}

json to_json(const norms::LorentzWeight& w) {
  return std::visit(overloaded{
                        [](const norms::ConstantWeight& c) -> json { return {{"family", "constant"}, {"c", c.c}}; },
                        [](const norms::AffineWeight& a) -> json {
                          return {{"family", "affine"}, {"alpha", a.alpha}, {"beta", a.beta}};
                        },
                        [](const norms::StepWeight& s) -> json {
                          return {{"family", "step"}, {"edges", s.edges}, {"values", s.values}};
                        },
                    },
                    w.family());
}

norms::LorentzWeight weight_from_json(const json& j) {
  const std::string family = text(j, "family");
  if (family == "constant") return norms::LorentzWeight(norms::ConstantWeight{number(j, "c")});
  if (family == "affine") return norms::LorentzWeight(norms::AffineWeight{number(j, "alpha"), number(j, "beta")});
  if (family == "step") {
    norms::StepWeight s;
    for (const auto& e : array(field(j, "edges"), "edges")) s.edges.push_back(number(e));
    for (const auto& v : array(field(j, "values"), "values")) s.values.push_back(number(v));
    return norms::LorentzWeight(std::move(s));
  }
  throw InvalidArgument("unknown weight family '" + family + "'");
}

json to_json(const norms::SpaceDescriptor& x) {
  return std::visit(overloaded{
                        [](const norms::OrliczSpace& s) -> json { return {{"kind", "orlicz"}, {"phi", to_json(s.phi)}}; },
                        [](const norms::LorentzSpace& s) -> json {
                          return {{"kind", "lorentz"}, {"w", to_json(s.w)}, {"q", s.q}};
                        },
                        [](const norms::OrliczLorentzSpace& s) -> json {
                          return {{"kind", "orlicz_lorentz"}, {"w", to_json(s.w)}, {"phi", to_json(s.phi)}};
                        },
                        [](const norms::MSSpace& s) -> json {
                          return {{"kind", "ms"}, {"F", to_json(s.F)}, {"G", to_json(s.G)}};
                        },
                    },
                    x);
}

norms::SpaceDescriptor space_from_json(const json& j) {
  const std::string kind = text(j, "kind");
  norms::SpaceDescriptor x;
  if (kind == "orlicz")
    x = norms::OrliczSpace{function_from_json(field(j, "phi"))};
  else if (kind == "lorentz")
    x = norms::LorentzSpace{weight_from_json(field(j, "w")), number(j, "q")};
  else if (kind == "orlicz_lorentz")
    x = norms::OrliczLorentzSpace{weight_from_json(field(j, "w")), function_from_json(field(j, "phi"))};
  else if (kind == "ms")
    x = norms::MSSpace{function_from_json(field(j, "F")), function_from_json(field(j, "G"))};
  else
    throw InvalidArgument("unknown space kind '" + kind + "'");
  require_valid(norms::validate(x), "space");
  return x;
}

json to_json(const groups::GroupDescriptor& g) {
  return std::visit(overloaded{
                        [](const groups::FullNS&) -> json { return {{"group", "NS"}}; },
                        [](const groups::ScaleInvariant& s) -> json { return {{"group", "NS_scale"}, {"a", s.a}}; },
                        [](const groups::Discrete& s) -> json {
                          return {{"group", "NS_discrete"}, {"a", s.a}, {"d", s.d}};
                        },
                        [](const groups::MeasurePreserving&) -> json { return {{"group", "U"}}; },
                    },
                    g);
}

groups::GroupDescriptor group_from_json(const json& j) {
  const std::string kind = text(j, "group");
  if (kind == "NS") return groups::FullNS{};
  if (kind == "U") return groups::MeasurePreserving{};
  if (kind == "NS_scale") {
    const double a = number(j, "a");
    if (!(a > 1.0)) throw InvalidArgument("lattice base a must exceed 1");
    return groups::ScaleInvariant{a};
  }
  if (kind == "NS_discrete") {
    const double a = number(j, "a");
    const json& d = field(j, "d");
    if (!(a > 1.0)) throw InvalidArgument("lattice base a must exceed 1");
    if (!d.is_number_integer() || d.get<int>() < 1) throw InvalidArgument("lattice step d must be an integer >= 1");
    return groups::Discrete{a, d.get<int>()};
  }
  throw InvalidArgument("unknown group '" + kind + "'");
}

}  // namespace rispaces::io
