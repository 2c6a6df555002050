#pragma once

#include <iosfwd>
#include <string>

#include "steklov/flow.hpp"
#include "steklov/zeta.hpp"

#include <nlohmann/json_fwd.hpp>

namespace steklov {

/// {"grid_order": M, "coeffs": [[re, im], ...]} with index order k = -M..M.
nlohmann::json to_json(const FourierFunction& f);
FourierFunction fourier_from_json(const nlohmann::json& j);
void save_fourier(const FourierFunction& f, const std::string& path);
FourierFunction load_fourier(const std::string& path);

/// CSV columns: k,lambda_k,disk_k,diff
void write_spectrum_csv(std::ostream& out, const SpectrumResult& result);
/// CSV columns: s,diff,diff1,diff2,tail
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);
nlohmann::json scan_to_json(const std::vector<ScanRow>& rows);
nlohmann::json spectrum_to_json(const SpectrumResult& result);
nlohmann::json to_json(const ZetaEvaluation& eval);
nlohmann::json to_json(const VariationReport& report);
nlohmann::json to_json(const CounterexampleReport& report);

/// One JSON object per line: {tau, residual, zeta2_at_0, sup_dist, snd_der_trace}.
void write_flow_jsonl(std::ostream& out, const std::vector<FlowState>& states);

/// Fixed shortest-round-trip formatting, identical across runs.
std::string format_double(double v);

}  // namespace steklov
