#include "pstforge/io.hpp"

#include "pstforge/errors.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace pstforge::io {

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) {
      throw InvalidInput("matrix rows must all have the same length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

// Schema errors from nlohmann (missing keys, wrong types) surface as InvalidInput.
template <typename F>
auto schema_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k < offset; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(e.what(), line, column);
  }
}

Json to_json(const SitePermutation& p) { return {{"n", p.size()}, {"image", p.image()}}; }

SitePermutation permutation_from_json(const Json& j) {
  return schema_guard("permutation", [&] {
    const int n = j.at("n").get<int>();
    const auto image = j.at("image").get<std::vector<int>>();
    if (static_cast<int>(image.size()) != n) throw InvalidInput("permutation image length differs from n");
    return SitePermutation::from_image(image);
  });
}

Json to_json(const SpectralAssignment& a) {
  Json mixing = Json::array();
  for (const auto& m : a.mixing) {
    mixing.push_back({{"eigenvalue_index", m.eigenvalue_index}, {"block", matrix_to_json(m.block)}});
  }
  return {{"tau", a.tau}, {"shifts", a.shifts}, {"mixing", mixing}};
}

SpectralAssignment assignment_from_json(const Json& j) {
  return schema_guard("assignment", [&] {
    SpectralAssignment a;
    a.tau = j.value("tau", 1.0);
    if (!(a.tau > 0.0) || !std::isfinite(a.tau)) throw InvalidInput("assignment tau must be positive");
    a.shifts = j.at("shifts").get<std::vector<long>>();
    if (j.contains("mixing")) {
      for (const auto& m : j.at("mixing")) {
        a.mixing.push_back({m.at("eigenvalue_index").get<int>(), matrix_from_json(m.at("block"))});
      }
    }
    return a;
  });
}

Json to_json(const PstHamiltonian& h) {
  return {{"n", h.size()}, {"tau", h.tau}, {"matrix", matrix_to_json(h.matrix)}};
}

PstHamiltonian hamiltonian_from_json(const Json& j) {
  return schema_guard("hamiltonian", [&] {
    PstHamiltonian h;
    h.tau = j.value("tau", 1.0);
    h.matrix = matrix_from_json(j.at("matrix"));
    if (j.contains("n") && j.at("n").get<int>() != h.size()) {
      throw InvalidInput("hamiltonian n differs from matrix size");
    }
    validate(h);
    return h;
  });
}

Json to_json(const PstReport& r) {
  return {{"residual_max", r.residual_max}, {"pass", r.pass}, {"tolerance", r.tolerance}};
}

Json to_json(const NoGoCertificate& c) {
  Json null_space = Json::array();
  for (Eigen::Index k = 0; k < c.real_null_space.cols(); ++k) {
    null_space.push_back(std::vector<double>(c.real_null_space.col(k).data(),
                                             c.real_null_space.col(k).data() + c.real_null_space.rows()));
  }
  return {{"n", c.n},
          {"rank", c.rank},
          {"expected_rank", c.n - 2},
          {"singular_values", std::vector<double>(c.singular_values.data(),
                                                  c.singular_values.data() + c.singular_values.size())},
          {"real_null_space", null_space},
          {"lambda_matrix", matrix_to_json(c.lambda_matrix)},
          {"holds", c.holds()}};
}

Json to_json(const Nn4Amplitudes& a) {
  return {{"mu", complex_to_json(a.mu)},
          {"nu", complex_to_json(a.nu)},
          {"xi", complex_to_json(a.xi)},
          {"zeta", complex_to_json(a.zeta)},
          {"phi", a.phi},
          {"chi", a.chi},
          {"m", a.m},
          {"closed_form",
           {{"mu_sq", a.closed_form.mu_sq},
            {"nu_sq", a.closed_form.nu_sq},
            {"xi_sq", a.closed_form.xi_sq},
            {"zeta_sq", a.closed_form.zeta_sq},
            {"matches_direct", a.closed_form.matches_direct},
            {"matches_with_mu_nu_swapped", a.closed_form.matches_with_mu_nu_swapped}}}};
}

std::string format_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

void write_design_csv(std::ostream& out, const WireDesign& design) {
  const std::string energy_units = "pi/tau";
  const std::string distance_units = "(tau/pi)^(1/" + format_float(design.gamma) + ")";
  out << "parameter,value,units\n";
  for (int k = 0; k < 3; ++k) {
    out << 'E' << k + 1 << ',' << format_float(design.params.energies[k]) << ',' << energy_units << '\n';
  }
  for (int k = 0; k < 3; ++k) {
    out << 'r' << k + 1 << ',' << format_float(design.params.distances[k]) << ',' << distance_units << '\n';
  }
}

void write_trace_csv(std::ostream& out, const DynamicsTrace& trace) {
  out << 'm';
  for (int f = 1; f <= trace.n; ++f) out << ",P_" << f;
  out << ",T\n";
  for (const auto& step : trace.steps) {
    out << format_float(step.m);
    for (Eigen::Index f = 0; f < step.probabilities.size(); ++f) out << ',' << format_float(step.probabilities(f));
    out << ',' << format_float(step.tangle) << '\n';
  }
}

}  // namespace pstforge::io
