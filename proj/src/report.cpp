#include "apxpat/io.hpp"

namespace apxpat::io {

using nlohmann::json;

json to_json(const Point& p) {
  json out = json::array();
  for (double c : p) out.push_back(c);
  return out;
}

json to_json(const Schedule& s) {
  return json{{"d", s.d},         {"k", s.k},           {"c", s.c},
              {"delta", s.delta}, {"eps", s.eps},       {"s", s.stride},
              {"r", s.ratio},     {"j", s.depth},       {"z0", s.threshold},
              {"kappa", s.kappa}};
}

json to_json(const VerifyResult& v) {
  return json{{"accepted", v.accepted},
              {"witness_anchor", v.witness_anchor.dim() ? to_json(v.witness_anchor) : json()},
              {"witness_scale", v.witness_scale},
              {"max_relative_deviation", v.max_relative_deviation}};
}

json to_json(const CollinearCheck& c) {
  return json{{"accepted", c.accepted},
              {"worst_triangle", c.worst_triangle},
              {"worst_angles", c.worst_angles},
              {"worst_angle", c.worst_angle}};
}

json to_json(const CollinearSearch& c) {
  const char* status = c.status == CollinearStatus::Found       ? "found"
                       : c.status == CollinearStatus::Exhausted ? "exhausted"
                                                                : "budget_exceeded";
  json out{{"found", c.status == CollinearStatus::Found},
           {"status", status},
           {"subset", c.subset},
           {"nodes", c.nodes}};
  if (c.status == CollinearStatus::Found) {
    out["bucket"] = c.bucket;
    out["rotations"] = c.rotations;
    out["greedy"] = c.from_greedy;
    out["certificate"] = to_json(c.certificate);
  }
  return out;
}

namespace {

json box_json(const AxisBox& b) { return json{{"low", to_json(b.low)}, {"side", b.side}}; }

json points_json(const std::vector<Point>& pts) {
  json out = json::array();
  for (const Point& p : pts) out.push_back(to_json(p));
  return out;
}

}  // namespace

json to_json(const SearchOutcome& o, bool include_trace) {
  json out{{"found", o.found},
           {"subset", o.subset},
           {"anchors", points_json(o.anchors)},
           {"schedule", to_json(o.schedule)},
           {"domain", box_json(o.domain)},
           {"grid_k", o.grid_k},
           {"grid_eps", o.grid_eps},
           {"steps", o.trace.steps.size()},
           {"warnings",
            {{"below_threshold", o.warnings.below_threshold},
             {"below_density", o.warnings.below_density}}}};
  out["homothety"] = o.homothety ? json{{"anchor", to_json(o.homothety->anchor())},
                                        {"scale", o.homothety->scale()}}
                                 : json();
  out["verify"] = o.verify ? to_json(*o.verify) : json();
  if (include_trace) {
    json steps = json::array();
    for (const SearchStep& st : o.trace.steps) {
      json js{{"box", box_json(st.box)},
              {"count", st.count},
              {"occupied_cells", st.occupied_cells},
              {"action", st.action == StepAction::Success ? "success" : "descend"}};
      if (st.action == StepAction::Success) {
        js["offset"] = st.offset;
        js["anchors"] = points_json(st.anchors);
        js["chosen"] = st.chosen;
      } else {
        js["cell"] = st.cell;
      }
      steps.push_back(std::move(js));
    }
    out["trace"] = std::move(steps);
  }
  return out;
}

}  // namespace apxpat::io
