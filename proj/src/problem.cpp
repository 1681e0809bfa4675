#include "nij/problem.hpp"

#include <fstream>
#include <json.hpp>

namespace nij {

using nlohmann::json;

static Eigen::VectorXd to_vector(const json& j, const std::string& what) {
  if (!j.is_array()) throw ProblemError(what + ": expected an array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ProblemError(what + ": expected an array of numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

static Eigen::MatrixXd to_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ProblemError(what + ": expected a matrix");
  const std::size_t cols = j[0].size();
  Eigen::MatrixXd m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ProblemError(what + ": ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

Sampler ProblemSpec::effective_sampler() const {
  if (has_sampler) return sampler;
  return Sampler::centered_box(chart.dim(), 1.0);
}

Sampler ProblemSpec::lifted_sampler() const {
  const Sampler base = effective_sampler();
  const int n = chart.dim();
  Sampler s = base;
  s.lo.resize(2 * n);
  s.hi.resize(2 * n);
  s.lo << base.lo, Eigen::VectorXd::Constant(n, -1.0);
  s.hi << base.hi, Eigen::VectorXd::Constant(n, 1.0);
  return s;
}

const NOperatorField& ProblemSpec::resolve_operator(const std::string& name) const {
  auto it = operators.find(name);
  if (it == operators.end())
    throw ProblemError("operator '" + name + "' is not declared in the problem file");
  return it->second;
}

ProblemSpec ProblemSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemError("cannot open problem file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json_text(text);
}

ProblemSpec ProblemSpec::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProblemError(std::string("problem file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ProblemError("problem file must be a JSON object");
  if (!doc.contains("format") || doc["format"] != "nijenhuis/1")
    throw ProblemError("missing or unsupported format tag (expected \"nijenhuis/1\")");

  ProblemSpec spec;

  if (doc.contains("chart")) {
    std::vector<std::string> names;
    for (const auto& n : doc["chart"]) names.push_back(n.get<std::string>());
    if (names.empty() || names.size() > 64)
      throw ProblemError("chart dimension must be between 1 and 64");
    spec.chart = Chart(std::move(names));
  }

  if (doc.contains("operators")) {
    if (spec.chart.dim() == 0) throw ProblemError("operators require a chart declaration");
    for (const auto& [name, rows] : doc["operators"].items()) {
      std::vector<std::vector<std::string>> entries;
      for (const auto& row : rows) {
        std::vector<std::string> r;
        for (const auto& cell : row) r.push_back(cell.get<std::string>());
        entries.push_back(std::move(r));
      }
      if (static_cast<int>(entries.size()) != spec.chart.dim())
        throw ProblemError("operator '" + name + "' is not square over the chart");
      for (const auto& r : entries)
        if (static_cast<int>(r.size()) != spec.chart.dim())
          throw ProblemError("operator '" + name + "' is not square over the chart");
      try {
        spec.operators.emplace(name, NOperatorField::from_strings(spec.chart, entries));
      } catch (const ParseError& e) {
        throw ProblemError("operator '" + name + "': " + e.what() + " at bytes [" +
                           std::to_string(e.span.start) + "," +
                           std::to_string(e.span.end) + ")");
      }
    }
  }

  if (doc.contains("fields")) {
    if (spec.chart.dim() == 0) throw ProblemError("fields require a chart declaration");
    for (const auto& [name, comps] : doc["fields"].items()) {
      VectorField f{spec.chart, {}};
      for (const auto& cell : comps) {
        try {
          f.comps.push_back(parse(cell.get<std::string>(), spec.chart));
        } catch (const ParseError& e) {
          throw ProblemError("field '" + name + "': " + e.what() + " at bytes [" +
                             std::to_string(e.span.start) + "," +
                             std::to_string(e.span.end) + ")");
        }
      }
      if (f.dim() != spec.chart.dim())
        throw ProblemError("field '" + name + "' has wrong component count");
      spec.fields.emplace(name, std::move(f));
    }
  }

  if (doc.contains("fibration")) {
    const auto& fj = doc["fibration"];
    const int n0 = fj.at("base_dim").get<int>();
    const int nf = spec.chart.dim() - n0;
    if (n0 < 1 || nf < 1)
      throw ProblemError("fibration base_dim must leave at least one fiber coordinate");
    SplitFibration fib(n0, nf);
    if (fj.contains("anchor")) {
      fib.anchor = to_vector(fj["anchor"], "fibration.anchor");
      if (fib.anchor.size() != nf)
        throw ProblemError("fibration.anchor must have one entry per fiber coordinate");
    }
    spec.fibration = fib;
  }

  if (doc.contains("algebra")) {
    const auto& aj = doc["algebra"];
    AlgebraSpec alg;
    if (aj.contains("name")) {
      try {
        alg.algebra = LieAlgebra::catalogue(aj["name"].get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ProblemError(e.what());
      }
    } else if (aj.contains("structure_constants")) {
      const auto& sc = aj["structure_constants"];
      alg.algebra.dim = static_cast<int>(sc.size());
      for (const auto& mk : sc)
        alg.algebra.c.push_back(to_matrix(mk, "algebra.structure_constants"));
    } else {
      throw ProblemError("algebra needs either a catalogue name or structure_constants");
    }
    const int n = alg.algebra.dim;
    alg.k_basis = Eigen::MatrixXd(n, 0);
    if (aj.contains("k_basis") && !aj["k_basis"].empty()) {
      const auto& kb = aj["k_basis"];
      alg.k_basis.resize(n, kb.size());
      for (std::size_t a = 0; a < kb.size(); ++a)
        alg.k_basis.col(a) = to_vector(kb[a], "algebra.k_basis");
    }
    if (aj.contains("ad_samples"))
      for (const auto& ad : aj["ad_samples"])
        alg.ad_samples.push_back(to_matrix(ad, "algebra.ad_samples"));
    alg.op = aj.contains("operator") ? to_matrix(aj["operator"], "algebra.operator")
                                     : Eigen::MatrixXd::Identity(n, n);
    if (alg.op.rows() != n || alg.op.cols() != n)
      throw ProblemError("algebra.operator dimension mismatch");
    spec.algebra = std::move(alg);
  }

  if (doc.contains("sampler")) {
    const auto& sj = doc["sampler"];
    Sampler s;
    s.lo = to_vector(sj.at("lo"), "sampler.lo");
    s.hi = to_vector(sj.at("hi"), "sampler.hi");
    if (s.lo.size() != spec.chart.dim() || s.hi.size() != spec.chart.dim())
      throw ProblemError("sampler box must have one bound per chart coordinate");
    for (int i = 0; i < s.lo.size(); ++i)
      if (!(s.lo[i] < s.hi[i])) throw ProblemError("sampler box needs lo < hi per axis");
    if (sj.contains("count")) s.count = sj["count"].get<int>();
    if (s.count < 1) throw ProblemError("sampler count must be >= 1");
    if (sj.contains("seed")) s.seed = sj["seed"].get<std::uint64_t>();
    spec.sampler = std::move(s);
    spec.has_sampler = true;
  }

  if (doc.contains("tolerances")) {
    const auto& tj = doc["tolerances"];
    if (tj.contains("torsion_tol")) spec.torsion_tol = tj["torsion_tol"].get<double>();
    if (tj.contains("fd_step")) spec.fd_step = tj["fd_step"].get<double>();
  }

  if (doc.contains("checks")) {
    const auto& cj = doc["checks"];
    if (cj.contains("complex")) spec.check_complex = cj["complex"].get<bool>();
  }

  if (spec.operators.empty() && !spec.algebra)
    throw ProblemError("problem file declares nothing to check");

  return spec;
}

}  // namespace nij
