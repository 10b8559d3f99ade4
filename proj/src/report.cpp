#include "plap/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "plap/error.hpp"

namespace plap {

using nlohmann::json;

json to_json(const ConditionReport& r) {
  json aux = json::object();
  for (const auto& [k, v] : r.auxiliary) aux[k] = v;
  return {{"name", std::string(to_string(r.name))},
          {"holds", r.holds},
          {"applicable", r.applicable},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"margin", r.margin},
          {"strict", r.strict},
          {"reason", r.reason},
          {"lambda1", r.lambda1},
          {"gamma", r.gamma},
          {"auxiliary", aux}};
}

json to_json(const WeakCheck& w) {
  return {{"passes", w.passes},     {"margin", w.margin},         {"worst_index", w.worst_index},
          {"worst_x", w.worst_x},   {"tol", w.tol},               {"admissible", w.admissible},
          {"reason", w.reason}};
}

json to_json(const Provenance& p) {
  return {{"method", p.method},
          {"family", p.family},
          {"lambda1", p.lambda1},
          {"tau", p.tau},
          {"tau_lo", p.tau_lo},
          {"tau_hi", p.tau_hi},
          {"tau_capped", p.tau_capped},
          {"tau_effective", p.tau_effective},
          {"eps", p.eps},
          {"k", p.k},
          {"sigma", p.sigma},
          {"x0_junction", p.x0_junction},
          {"x1_junction", p.x1_junction},
          {"scale", p.scale},
          {"has_left", p.has_left},
          {"has_right", p.has_right},
          {"attempts", p.attempts},
          {"v_sup", p.v_sup},
          {"k_min", p.k_min},
          {"order_factor", p.order_factor}};
}

json to_json(const Certificate& c) {
  json j{{"kind", std::string(to_string(c.kind))},
         {"construction", to_json(c.construction)},
         {"nodes", c.u.size()},
         {"max", c.u.max()}};
  j["verified"] = c.verified ? to_json(*c.verified) : json(nullptr);
  return j;
}

json to_json(const PositivityReport& r) {
  auto runs = [](const std::vector<Run>& v) {
    json a = json::array();
    for (const Run& run : v) a.push_back({{"first", run.first}, {"last", run.last}, {"x_lo", run.x_lo}, {"x_hi", run.x_hi}});
    return a;
  };
  return {{"min_interior", r.min_interior},
          {"argmin", r.argmin},
          {"argmin_x", r.argmin_x},
          {"left_ratio", r.left_ratio},
          {"right_ratio", r.right_ratio},
          {"dead_core", runs(r.dead_core)},
          {"boundary_runs", runs(r.boundary_runs)}};
}

json to_json(const RandomTestReport& r) {
  return {{"count", r.count}, {"worst", r.worst}, {"violations", r.violations}};
}

json to_json(const SolutionReport& r) {
  json conds = json::array();
  for (const auto& c : r.conditions) conds.push_back(to_json(c));
  json j{{"success", r.success},
         {"residual", r.residual},
         {"min_interior", r.min_interior},
         {"ordering_ok", r.ordering_ok},
         {"lambda1", r.lambda1},
         {"conditions", conds},
         {"subsolution", to_json(r.sub)},
         {"supersolution", to_json(r.super)},
         {"positivity", to_json(r.positivity)},
         {"active_nodes", r.active_nodes.size()},
         {"iterations", r.iterations},
         {"notes", r.notes}};
  j["theorem"] = r.theorem ? json(std::string(to_string(*r.theorem))) : json(nullptr);
  return j;
}

namespace {

void emit(std::string& out, const json& j, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        emit(out, it.value(), depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(out, j[i], depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::string s(buf);
      // keep it a float on re-read
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += j.dump(-1, ' ', false, json::error_handler_t::replace);
  }
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  emit(out, j, 0);
  out += "\n";
  return out;
}

void write_json(std::ostream& os, const json& j) { os << dump_json(j); }

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  out << dump_json(j);
}

}  // namespace plap
