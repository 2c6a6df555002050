#include "steklov/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace steklov {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

json to_json(const FourierFunction& f) {
  json coeffs = json::array();
  const int M = f.grid_order();
  for (int k = -M; k <= M; ++k) {
    coeffs.push_back({f.coeff(k).real(), f.coeff(k).imag()});
  }
  return json{{"grid_order", M}, {"coeffs", coeffs}};
}

FourierFunction fourier_from_json(const json& j) {
  if (!j.contains("grid_order") || !j.contains("coeffs")) {
    throw std::invalid_argument("fourier_from_json: need grid_order and coeffs fields");
  }
  const int M = j.at("grid_order").get<int>();
  const auto& coeffs = j.at("coeffs");
  if (M < 0 || !coeffs.is_array() || coeffs.size() != static_cast<size_t>(2 * M + 1)) {
    throw std::invalid_argument("fourier_from_json: coeffs must hold 2*grid_order+1 entries");
  }
  std::vector<Complex> c;
  c.reserve(coeffs.size());
  for (const auto& entry : coeffs) {
    if (!entry.is_array() || entry.size() != 2) {
      throw std::invalid_argument("fourier_from_json: each coefficient is [re, im]");
    }
    c.emplace_back(entry[0].get<double>(), entry[1].get<double>());
  }
  return FourierFunction(std::move(c));
}

void save_fourier(const FourierFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("save_fourier: cannot open " + path);
  out << to_json(f).dump(2) << "\n";
}

FourierFunction load_fourier(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_fourier: cannot open " + path);
  json j;
  in >> j;
  return fourier_from_json(j);
}

void write_spectrum_csv(std::ostream& out, const SpectrumResult& result) {
  out << "k,lambda_k,disk_k,diff\n";
  for (int k = 0; k <= result.trusted_count; ++k) {
    const double lam = result.lambda(k);
    const int disk = disk_eigenvalue(k);
    out << k << ',' << format_double(lam) << ',' << disk << ','
        << format_double(lam - disk) << '\n';
  }
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "s,diff,diff1,diff2,tail\n";
  for (const ScanRow& row : rows) {
    out << format_double(row.s) << ',' << format_double(row.diff) << ','
        << format_double(row.diff1) << ',' << format_double(row.diff2) << ','
        << format_double(row.tail) << '\n';
  }
}

json spectrum_to_json(const SpectrumResult& result) {
  json rows = json::array();
  for (int k = 0; k <= result.trusted_count; ++k) {
    rows.push_back({{"k", k},
                    {"lambda", result.lambda(k)},
                    {"disk", disk_eigenvalue(k)},
                    {"diff", result.lambda(k) - disk_eigenvalue(k)}});
  }
  return json{{"truncation_order", result.truncation_order},
              {"trusted_count", result.trusted_count},
              {"tail_residual", result.tail_residual},
              {"rows", rows}};
}

json scan_to_json(const std::vector<ScanRow>& rows) {
  json arr = json::array();
  for (const ScanRow& row : rows) {
    arr.push_back({{"s", row.s},
                   {"diff", row.diff},
                   {"diff1", row.diff1},
                   {"diff2", row.diff2},
                   {"tail", row.tail}});
  }
  return arr;
}

json to_json(const ZetaEvaluation& eval) {
  return json{{"s", eval.s},
              {"deriv_order", eval.deriv_order},
              {"value", eval.value},
              {"truncation_index", eval.truncation_index},
              {"tail_estimate", eval.tail_estimate}};
}

json to_json(const VariationReport& report) {
  return json{{"closed_form", report.closed_form},
              {"finite_difference", report.finite_difference},
              {"tau_step", report.tau_step},
              {"relative_error", report.relative_error}};
}

json to_json(const CounterexampleReport& report) {
  return json{{"r_found", report.r_found},
              {"diff2_value", report.diff2_value},
              {"spectral_zeta1_diff", report.spectral_zeta1_diff},
              {"zeta1_diff_at_zero", report.zeta1_diff_at_zero},
              {"quadratic_mismatch", report.quadratic_mismatch},
              {"tau", report.tau},
              {"truncation_order", report.truncation_order}};
}

void write_flow_jsonl(std::ostream& out, const std::vector<FlowState>& states) {
  for (const FlowState& state : states) {
    const json line = {{"tau", state.tau},
                       {"residual", state.normalization_residual},
                       {"zeta2_at_0", state.zeta2_at_0},
                       {"sup_dist", state.sup_distance_to_one},
                       {"snd_der_trace", state.snd_der_trace}};
    out << line.dump() << '\n';
  }
}

}  // namespace steklov
