#include "richardson/io.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace richardson {

using nlohmann::json;

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::int64_t parse_int(const std::string& tok) {
  std::int64_t v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) throw std::invalid_argument("bad integer '" + tok + "'");
  return v;
}

double parse_double(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + tok + "'");
  }
  if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

Site make_site(const std::vector<std::int64_t>& coords, int dim) {
  if (static_cast<int>(coords.size()) != dim) {
    throw std::invalid_argument("site has " + std::to_string(coords.size()) + " coordinates, expected " +
                                std::to_string(dim));
  }
  std::vector<Coord> c;
  for (std::int64_t v : coords) {
    if (v <= -kMaxCoordinate / 2 || v >= kMaxCoordinate / 2) throw std::invalid_argument("coordinate out of range");
    c.push_back(static_cast<Coord>(v));
  }
  return Site(c);
}

void insert_unique(SiteSet& set, const Site& x) {
  if (!set.insert(x).second) throw std::invalid_argument("duplicate site " + x.to_string());
}

SiteSet site_set_from_json(const json& j, int dim) {
  if (j.is_string()) return parse_site_set(j.get<std::string>(), dim);
  if (!j.is_array()) throw std::invalid_argument("initial set must be a string or an array");
  SiteSet out;
  for (const json& s : j) {
    if (!s.is_array()) throw std::invalid_argument("site must be an array of integers");
    std::vector<std::int64_t> c;
    for (const json& v : s) {
      if (!v.is_number_integer()) throw std::invalid_argument("site coordinates must be integers");
      c.push_back(v.get<std::int64_t>());
    }
    insert_unique(out, make_site(c, dim));
  }
  return out;
}

}  // namespace

SiteSet parse_site_set(const std::string& text, int dim) {
  check_dimension(dim);
  const std::string s = strip(text);
  SiteSet out;
  if (s.empty() || s == "{}") return out;
  for (const std::string& tok : split(s, ';')) {
    if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')') {
      throw std::invalid_argument("expected '(x1,...,xd)', got '" + tok + "'");
    }
    std::vector<std::int64_t> coords;
    for (const std::string& c : split(tok.substr(1, tok.size() - 2), ',')) coords.push_back(parse_int(c));
    insert_unique(out, make_site(coords, dim));
  }
  return out;
}

std::string format_site_set(const SiteSet& set) {
  std::string out;
  for (const Site& x : set) {
    if (!out.empty()) out += ';';
    out += x.to_string();
  }
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const std::string& tok : split(strip(text), ',')) out.push_back(parse_int(tok));
  return out;
}

std::vector<double> parse_lambda_grid(const std::string& text) {
  const auto parts = split(strip(text), ':');
  if (parts.size() != 3) throw std::invalid_argument("lambda grid must be lo:hi:step");
  return lambda_grid(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]));
}

std::vector<NamedPair> parse_pairs(const json& doc, int dim) {
  const json& list = doc.is_object() ? doc.at("pairs") : doc;
  if (!list.is_array()) throw std::invalid_argument("pairs catalog must be an array");
  std::vector<NamedPair> out;
  for (const json& p : list) {
    NamedPair np;
    np.name = p.value("name", "pair" + std::to_string(out.size()));
    np.xi1 = site_set_from_json(p.at("init1"), dim);
    np.xi2 = site_set_from_json(p.at("init2"), dim);
    out.push_back(std::move(np));
  }
  return out;
}

json site_to_json(const Site& x) { return x.coords(); }

json time_to_json(Time t) {
  if (t == kNever) return "never";
  return t;
}

SimulateResult run_simulate(const SimulateRequest& req) {
  SimulateResult res;
  res.request = req;
  res.reduction = reduce_rates(req.lambda1, req.lambda2);
  ModelConfig cfg;
  cfg.dim = req.dim;
  cfg.lambda = res.reduction.lambda;
  cfg.xi1 = res.reduction.relabel ? req.init2 : req.init1;
  cfg.xi2 = res.reduction.relabel ? req.init1 : req.init2;
  StopCondition stop;
  stop.radius = req.radius;
  stop.max_events = req.max_events;
  res.trace = simulate(cfg, req.seed, stop);
  return res;
}

json trace_document(const SimulateResult& result) {
  const SimulateRequest& req = result.request;
  const bool relabel = result.reduction.relabel;
  auto user_type = [&](int t) { return relabel ? 3 - t : t; };

  json header;
  header["artifact"] = "richardson";
  header["version"] = kArtifactVersion;
  header["command"] = "simulate";
  header["dim"] = req.dim;
  header["lambda1"] = req.lambda1;
  header["lambda2"] = req.lambda2;
  header["init1"] = format_site_set(req.init1);
  header["init2"] = format_site_set(req.init2);
  header["radius"] = req.radius ? json(*req.radius) : json(nullptr);
  header["max_events"] = req.max_events ? json(*req.max_events) : json(nullptr);
  header["seed"] = req.seed;
  header["reduced_lambda"] = result.reduction.lambda;
  header["time_scale"] = result.reduction.time_scale;
  header["relabel"] = relabel;
  header["time_units"] = "reduced";

  const Trace& tr = result.trace;
  auto outcome = tr.outcome;
  if (relabel && outcome == Outcome::kType1Dead) {
    outcome = Outcome::kType2Dead;
  } else if (relabel && outcome == Outcome::kType2Dead) {
    outcome = Outcome::kType1Dead;
  }

  json events = json::array();
  for (const EventRecord& ev : tr.events) {
    events.push_back({{"n", ev.n},
                      {"t", ev.time},
                      {"site", site_to_json(ev.site)},
                      {"type", user_type(ev.infection_type)},
                      {"parent", site_to_json(ev.parent)}});
  }
  json doc;
  doc["header"] = std::move(header);
  doc["outcome"] = to_string(outcome);
  doc["n_events"] = tr.events.size();
  doc["final_time"] = tr.horizon;
  doc["events"] = std::move(events);
  return doc;
}

SimulateRequest request_from_header(const json& doc) {
  const json& h = doc.at("header");
  SimulateRequest req;
  req.dim = h.at("dim").get<int>();
  req.lambda1 = h.at("lambda1").get<double>();
  req.lambda2 = h.at("lambda2").get<double>();
  req.init1 = parse_site_set(h.at("init1").get<std::string>(), req.dim);
  req.init2 = parse_site_set(h.at("init2").get<std::string>(), req.dim);
  if (!h.at("radius").is_null()) req.radius = h.at("radius").get<std::int64_t>();
  if (!h.at("max_events").is_null()) req.max_events = h.at("max_events").get<std::uint64_t>();
  req.seed = h.at("seed").get<std::uint64_t>();
  return req;
}

std::string snapshot_text(const SimulateResult& result) {
  const Trace& tr = result.trace;
  const bool relabel = result.reduction.relabel;
  SiteSet all = set_union(tr.final_gamma1, tr.final_gamma2);
  const Box box = bounding_box(all);
  const int d = box.dim();
  auto glyph = [&](const Site& x) {
    int t = tr.final_gamma1.contains(x) ? 1 : tr.final_gamma2.contains(x) ? 2 : 0;
    if (t != 0 && relabel) t = 3 - t;
    return t == 0 ? '.' : static_cast<char>('0' + t);
  };

  std::ostringstream os;
  auto emit_slice = [&](Site x) {
    for (Coord y = box.hi[1]; y >= box.lo[1]; --y) {
      x[1] = y;
      for (Coord c = box.lo[0]; c <= box.hi[0]; ++c) {
        x[0] = c;
        os << glyph(x);
      }
      os << '\n';
    }
  };
  if (d == 2) {
    emit_slice(box.lo);
    return os.str();
  }
  // Enumerate trailing coordinates lexicographically.
  Box tail = box;
  tail.hi[0] = tail.lo[0];
  tail.hi[1] = tail.lo[1];
  for_each_in_box(tail, [&](const Site& x) {
    os << '#';
    for (int i = 2; i < d; ++i) os << " x" << (i + 1) << '=' << x[i];
    os << '\n';
    emit_slice(x);
  });
  return os.str();
}

json inclusion_report_json(const InclusionReport& report) {
  json checks = json::array();
  for (const InclusionCheck& c : report.checks) {
    checks.push_back({{"t", c.time}, {"inclusion1", c.inclusion1}, {"inclusion2", c.inclusion2}, {"inclusion3", c.inclusion3}});
  }
  json j;
  j["pass"] = report.pass;
  j["horizon"] = report.horizon;
  j["n_checks"] = report.checks.size();
  j["checks"] = std::move(checks);
  if (report.first_violation) {
    const InclusionViolation& v = *report.first_violation;
    j["first_violation"] = {{"t", v.time},
                            {"check_index", v.check_index},
                            {"gamma1_a", format_site_set(v.gamma1_a)},
                            {"gamma2_a", format_site_set(v.gamma2_a)},
                            {"gamma1_b", format_site_set(v.gamma1_b)},
                            {"gamma2_b", format_site_set(v.gamma2_b)}};
  } else {
    j["first_violation"] = nullptr;
  }
  return j;
}

json path_report_json(const PathTransferReport& report) {
  json starts = json::array();
  for (const Site& x : report.start_sites) starts.push_back(site_to_json(x));
  return {{"start_sites", std::move(starts)},
          {"edges_checked", report.edges_checked},
          {"pass", report.pass},
          {"failures", report.failures}};
}

}  // namespace richardson
