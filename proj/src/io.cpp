#include "sispace/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sispace::io {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json num(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  return json::parse(fmt_double(x));
}

namespace {


cplx cnum_from(const json& j) {
  return {j.value("re", 0.0), j.value("im", 0.0)};
}

json complex_list(const std::vector<cplx>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(json::array({num(z.real()), num(z.imag())}));
  return out;
}

std::vector<cplx> complex_list_from(const json& j) {
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& e : j) out.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  return out;
}

}  // namespace

json coeffs_to_json(const CoeffSeq& c) {
  json entries = json::array();
  for (const auto& [k, v] : c.entries()) {
    json e;
    e["k"] = c.dim() == 2 ? json::array({k[0], k[1]}) : json::array({k[0]});
    e["re"] = num(v.real());
    e["im"] = num(v.imag());
    entries.push_back(std::move(e));
  }
  return json{{"dim", c.dim()}, {"entries", std::move(entries)}};
}

CoeffSeq coeffs_from_json(const json& j) {
  CoeffSeq c(j.value("dim", 1));
  for (const auto& e : j.value("entries", json::array())) {
    const auto& k = e.at("k");
    LatticePoint p{k.at(0).get<int>(), k.size() > 1 ? k.at(1).get<int>() : 0};
    c.add(p, cplx{e.value("re", 0.0), e.value("im", 0.0)});
  }
  return c;
}

json grid_to_json(const GridSpec& g) {
  return json{{"R", num(g.R)},
              {"h", num(g.h)},
              {"freq_radius", num(g.freq_radius)},
              {"K", g.K}};
}

GridSpec grid_from_json(const json& j) {
  GridSpec g;
  g.R = j.value("R", g.R);
  g.h = j.value("h", g.h);
  g.freq_radius = j.value("freq_radius", g.freq_radius);
  g.K = j.value("K", g.K);
  g.validate();
  return g;
}

json generator_to_json(const Generator& g) {
  switch (g.kind()) {
    case Generator::Kind::Gaussian:
      return json{{"kind", "gaussian"}, {"sigma", num(g.sigma())}, {"dim", g.dim()}};
    case Generator::Kind::BSpline:
      return json{{"kind", "bspline"}, {"order", g.order()}, {"dim", g.dim()}};
    case Generator::Kind::BandLimited:
      return json{{"kind", "band_limited"}, {"cutoff", num(g.cutoff())}, {"dim", g.dim()}};
    case Generator::Kind::GridSampled:
      return json{{"kind", "grid_sampled"},
                  {"dim", g.dim()},
                  {"grid", grid_to_json(g.grid())},
                  {"freq", complex_list(g.freq_samples())}};
  }
  throw Error("unknown generator kind");
}

Generator generator_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  int dim = j.value("dim", 1);
  if (kind == "gaussian") return Generator::gaussian(j.value("sigma", 1.0), dim);
  if (kind == "bspline") return Generator::bspline(j.value("order", 2), dim);
  if (kind == "band_limited")
    return Generator::band_limited(j.value("cutoff", 1.0), dim);
  if (kind == "grid_sampled") {
    GridSpec grid = grid_from_json(j.at("grid"));
    if (j.contains("freq"))
      return Generator::from_freq_samples(grid, complex_list_from(j.at("freq")), dim);
    return Generator::grid_sampled(grid, complex_list_from(j.at("space")), dim);
  }
  throw Error("unknown generator kind: " + kind);
}

json scene_to_json(const Scene& s) {
  json gens = json::array(), coeffs = json::array();
  for (const auto& g : s.f.generators) gens.push_back(generator_to_json(g));
  for (const auto& c : s.f.coeffs) coeffs.push_back(coeffs_to_json(c));
  return json{{"generators", std::move(gens)},
              {"coefficients", std::move(coeffs)},
              {"s", num(s.f.order_s)},
              {"grid", grid_to_json(s.grid)}};
}

Scene scene_from_json(const json& j) {
  Scene s;
  s.grid = j.contains("grid") ? grid_from_json(j.at("grid")) : GridSpec{};
  for (const auto& g : j.value("generators", json::array()))
    s.f.generators.push_back(generator_from_json(g));
  for (const auto& c : j.value("coefficients", json::array()))
    s.f.coeffs.push_back(coeffs_from_json(c));
  s.f.order_s = j.value("s", 0.0);
  s.f.validate();
  return s;
}

namespace {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Violated: return "violated";
    default: return "inconclusive";
  }
}

}  // namespace

json frame_report_to_json(const FrameReport& r) {
  json ranks = json::object();
  for (const auto& [rank, count] : r.fiber_rank_profile)
    ranks[std::to_string(rank)] = count;
  return json{{"A", num(r.lower_A)},
              {"B", num(r.upper_B)},
              {"spectrum_measure", num(r.spectrum_measure)},
              {"fiber_rank_profile", std::move(ranks)},
              {"verdict", verdict_name(r.verdict)}};
}

json projection_to_json(const ProjectionResult& r, const GridSpec& grid) {
  json coeffs = json::array();
  for (const auto& c : r.projection.coeffs) coeffs.push_back(coeffs_to_json(c));
  return json{{"coefficients", std::move(coeffs)},
              {"s", num(r.projection.order_s)},
              {"residual", num(r.residual_norm)},
              {"max_fiber_condition", num(r.max_fiber_condition)},
              {"ill_conditioned_fibers", r.ill_conditioned_fibers},
              {"grid", grid_to_json(grid)}};
}

json convolution_to_json(const ConvolutionResult& r, const GridSpec& grid) {
  return json{{"result", scene_to_json({r.result, grid})},
              {"target_order", num(r.target_order)},
              {"epsilon", num(r.epsilon)}};
}

json recovery_to_json(const RecoveryResult& r) {
  json zeros = json::array();
  for (const auto& z : r.spectrum.zeros)
    zeros.push_back(json{{"t", json::array({num(z.t[0]), num(z.t[1])})},
                         {"multiplicity", z.multiplicity}});
  return json{{"a", coeffs_to_json(r.a)},
              {"annihilator_zeros", std::move(zeros)},
              {"residual", num(r.residual)}};
}

json mikhlin_to_json(const MikhlinReport& r) {
  json c = json::array();
  for (double v : r.constants) c.push_back(num(v));
  return json{{"verdict", r.verdict}, {"constants", std::move(c)}};
}

json ellipticity_to_json(const EllipticityEstimate& e) {
  return json{{"c", num(e.c)},
              {"n", num(e.n)},
              {"verdict", e.verdict},
              {"min_ratio_location", num(e.min_ratio_location)},
              {"fit_rms", num(e.fit_rms)}};
}

MultiplierSymbol multiplier_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant")
    return MultiplierSymbol::constant(cnum_from(j));
  if (kind == "riesz") return MultiplierSymbol::riesz(j.value("axis", 0));
  if (kind == "shift") {
    const auto& h = j.at("h0");
    return MultiplierSymbol::shift(
        {h.at(0).get<double>(), h.size() > 1 ? h.at(1).get<double>() : 0.0});
  }
  throw Error("unknown multiplier kind: " + kind);
}

PeriodicMultiplier periodic_from_json(const json& j) {
  if (j.value("kind", "trig") == "spline")
    return PeriodicMultiplier::spline(j.value("q", 2), j.value("K", 32));
  return PeriodicMultiplier::trig(coeffs_from_json(j.at("coeffs")), j.value("p", 0));
}

DelayDiffOperator operator_from_json(const json& j) {
  DelayDiffOperator T;
  for (const auto& t : j.at("terms")) {
    DDETerm term;
    term.a = {t.value("a_re", 0.0), t.value("a_im", 0.0)};
    term.j = t.value("j", 0);
    term.b = t.value("b", 0.0);
    T.terms.push_back(term);
  }
  return T;
}

json wfset_to_json(const WFSet& w) {
  json items = json::array();
  for (const auto& item : w.items) {
    json cone;
    if (w.dim == 1) {
      const char* name = item.cone.contains_sign(1)
                             ? (item.cone.contains_sign(-1) ? "both" : "+")
                             : "-";
      cone = json{{"d1", name}};
    } else {
      json arcs = json::array();
      for (const auto& seg : item.cone.segments())
        arcs.push_back(json::array({num(seg[0]), num(seg[1])}));
      cone = json{{"intervals", std::move(arcs)}};
    }
    json base = w.dim == 2 ? json::array({num(item.base[0]), num(item.base[1])})
                           : json::array({num(item.base[0])});
    items.push_back(json{{"base", std::move(base)},
                         {"cone", std::move(cone)},
                         {"periodic", item.lattice_periodic}});
  }
  return json{{"dim", w.dim}, {"items", std::move(items)}};
}

WFSet wfset_from_json(const json& j) {
  WFSet w;
  w.dim = j.value("dim", 1);
  for (const auto& it : j.value("items", json::array())) {
    WFItem item;
    const auto& b = it.at("base");
    item.base = {b.at(0).get<double>(), b.size() > 1 ? b.at(1).get<double>() : 0.0};
    const auto& cone = it.at("cone");
    if (w.dim == 1) {
      const std::string d1 = cone.at("d1").get<std::string>();
      if (d1 == "+")
        item.cone = Cone::plus();
      else if (d1 == "-")
        item.cone = Cone::minus();
      else
        item.cone = Cone::line_both();
    } else {
      std::vector<std::array<double, 2>> arcs;
      for (const auto& seg : cone.at("intervals"))
        arcs.push_back({seg.at(0).get<double>(), seg.at(1).get<double>()});
      item.cone = Cone::arcs(arcs);
    }
    item.lattice_periodic = it.value("periodic", false);
    w.items.push_back(std::move(item));
  }
  w.canonicalize();
  return w;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace sispace::io
