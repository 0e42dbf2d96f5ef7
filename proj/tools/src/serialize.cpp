#include "chowla_cli/serialize.hpp"

namespace chowla::cli {

namespace {

Json optional_rational(const std::optional<Rational>& r) {
  return r ? Json(to_string(*r)) : Json(nullptr);
}

std::string csv_field(const Json& v) {
  std::string text;
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_null()) {
    return "";
  } else {
    text = v.dump();
  }
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

Json to_json(const IntPolynomial& p) {
  Json coeffs = Json::array();
  for (const BigInt& c : p.coeffs()) coeffs.push_back(to_string(c));
  return {{"text", p.to_string()}, {"coefficients", coeffs}, {"degree", p.degree()}};
}

Json to_json(const PolynomialClass& c) {
  Json roots = Json::array();
  for (const Rational& r : c.rational_roots) roots.push_back(to_string(r));
  Json out = {{"degree", c.degree}, {"is_pure_power", c.is_pure_power}};
  if (c.is_pure_power) {
    out["pure_power_w"] = to_string(c.pure_power_w);
    out["pure_power_c"] = to_string(c.pure_power_c);
  } else {
    out["pure_power_w"] = nullptr;
    out["pure_power_c"] = nullptr;
  }
  out["is_product_of_linear_factors"] = c.is_product_of_linear_factors;
  out["rational_roots"] = roots;
  out["generalized_even_center"] = optional_rational(c.generalized_even_center);
  out["clt_admissible"] = c.clt_admissible;
  out["fluct_admissible"] = c.fluct_admissible;
  return out;
}

Json to_json(const FactoredValue& row) {
  return {{"n", row.n},
          {"value", row.value},
          {"factors", row.factor_string()},
          {"largest_prime", row.largest_prime}};
}

Json to_json(const LpfDensity& d) {
  return {{"count", d.count},
          {"fraction", to_string(d.fraction)},
          {"fraction_value", to_double(d.fraction)}};
}

Json to_json(const EnergyReport& r) {
  Json out;
  out["range"] = {{"n", r.range.n()}, {"q", r.range.q()}, {"a", r.range.a()}};
  out["polynomial"] = to_json(r.polynomial);
  out["members"] = r.members;
  out["total"] = r.total;
  out["diagonal_arg"] = r.diagonal_arg;
  out["value_diagonal"] = r.value_diagonal;
  out["nontrivial"] = r.nontrivial;
  out["generalized_trivial"] = r.generalized_trivial;
  out["offdiag"] = r.offdiag();
  out["main_term"] = to_string(r.main_term);
  out["asymptotic_main_term"] = to_string(r.asymptotic_main_term);
  out["error_exponent"] = optional_rational(r.error_exponent);
  out["offdiag_over_bound"] =
      r.offdiag_over_bound ? Json(*r.offdiag_over_bound) : Json(nullptr);
  out["generalized_even"] = r.generalized_even;
  out["passes"] = r.passes;
  return out;
}

Json to_json(const ExponentFit& fit) {
  Json points = Json::array();
  for (const auto& p : fit.points) {
    points.push_back({{"n", p.n}, {"total", p.total}, {"offdiag", p.offdiag}, {"ratio", p.ratio}});
  }
  return {{"exponent", to_string(fit.exponent)},
          {"points", points},
          {"slope", fit.slope ? Json(*fit.slope) : Json(nullptr)}};
}

Json to_json(const PairedPrimeCounts& c) {
  return {{"same_prime", c.same_prime},
          {"distinct_primes", c.distinct_primes},
          {"total", c.total()}};
}

Json to_json(const BombieriPilaBound& b) {
  return {{"degree", b.degree},
          {"n", b.n},
          {"value", b.value},
          {"log_value", b.log_value},
          {"precondition_holds", b.precondition_holds}};
}

Json to_json(const CltStatistics& s) {
  return {{"mean_re", s.mean_re},
          {"mean_im", s.mean_im},
          {"var_re", s.var_re},
          {"var_im", s.var_im},
          {"cov_re_im", s.cov_re_im},
          {"cov_re_im_std_error", s.cov_re_im_std_error},
          {"second_moment", s.second_moment},
          {"second_moment_std_error", s.second_moment_std_error},
          {"fourth_moment", s.fourth_moment},
          {"fourth_moment_std_error", s.fourth_moment_std_error},
          {"ks_re", s.ks_re},
          {"ks_im", s.ks_im},
          {"exact_second_moment", to_string(s.exact_second_moment)},
          {"exact_fourth_moment", to_string(s.exact_fourth_moment)},
          {"exact_fourth_moment_value", to_double(s.exact_fourth_moment)},
          {"unit_terms", s.unit_terms},
          {"zero_terms", s.zero_terms},
          {"negative_values", s.negative_values}};
}

Json to_json(const McLeishEntry& e) {
  return {{"n", e.n},
          {"variance_sum", to_string(e.variance_sum)},
          {"lindeberg_sum", to_string(e.lindeberg_sum)},
          {"lindeberg_sum_value", to_double(e.lindeberg_sum)},
          {"cross_term", to_string(e.cross_term)},
          {"cross_term_value", to_double(e.cross_term)},
          {"repeated_value_pairs", e.repeated_value_pairs},
          {"same_prime_energy", e.same_prime_energy},
          {"same_prime_triples", e.same_prime_triples},
          {"paired_distinct", e.paired_distinct},
          {"paired_triples_distinct", e.paired_triples_distinct}};
}

Json to_json(const ScaleGrid& g) {
  return {{"base", g.base}, {"ratio", to_string(g.ratio)}, {"points", g.points}};
}

Json to_json(const FamilyCheck& c) {
  return {{"disjoint", c.disjoint},
          {"no_shared_values", c.no_shared_values},
          {"greedy_bound", c.greedy_bound},
          {"nested", c.nested},
          {"empty_scales", c.empty_scales}};
}

Json to_json(const ScaleSummary& s) {
  return {{"x", s.x},
          {"threshold", s.threshold},
          {"e_size", s.e_size},
          {"f_size", s.f_size},
          {"a_size", s.a_size},
          {"a_over_x", s.a_over_x},
          {"mu", to_string(s.mu)},
          {"mu_value", to_double(s.mu)},
          {"mu_floor", to_string(s.mu_floor)},
          {"s2_count", s.s2.count},
          {"s2_normalized", to_string(s.s2.normalized)},
          {"s2_pair_count", s.s2.pair_count},
          {"s2_upper_bound", s.s2.upper_bound},
          {"s1_second_moment", s.s1_second_moment},
          {"s1_second_moment_std_error", s.s1_second_moment_std_error},
          {"var_re_s1_normalized", s.var_re_s1_normalized},
          {"mean_conditional_variance", s.mean_conditional_variance},
          {"mean_abs_s2_normalized", s.mean_abs_s2_normalized},
          {"mean_abs_s3_normalized", s.mean_abs_s3_normalized},
          {"max_split_residual", s.max_split_residual}};
}

Json to_json(const CovarianceEntry& c) {
  return {{"i", c.i},
          {"j", c.j},
          {"covariance", c.covariance},
          {"std_error", c.std_error},
          {"z_score", c.z_score}};
}

Json to_json(const FluctReport& r) {
  Json scales = Json::array(), covariances = Json::array();
  for (const auto& s : r.scales) scales.push_back(to_json(s));
  for (const auto& c : r.covariances) covariances.push_back(to_json(c));
  return {{"polynomial", to_json(r.polynomial)},
          {"grid", to_json(r.grid)},
          {"family_check", to_json(r.family_check)},
          {"scales", scales},
          {"covariances", covariances},
          {"quantile_probs", r.quantile_probs},
          {"max_stat_quantiles", r.max_stat_quantiles},
          {"normalized_quantiles", r.normalized_quantiles},
          {"max_stats", r.max_stats}};
}

void write_csv(const Json& metadata, const Json& rows, std::ostream& out) {
  out << "# " << metadata.dump() << "\n";
  if (!rows.is_array() || rows.empty()) return;
  std::vector<std::string> keys;
  for (const auto& [key, value] : rows.front().items()) keys.push_back(key);
  for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
  out << "\n";
  for (const Json& row : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      out << (i ? "," : "");
      if (row.contains(keys[i])) out << csv_field(row[keys[i]]);
    }
    out << "\n";
  }
}

}  // namespace chowla::cli
