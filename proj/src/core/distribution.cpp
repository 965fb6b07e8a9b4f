#include "core/distribution.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ruinkit {

namespace {

std::string trimmed(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

long long parse_integer(const std::string& s) {
  if (s.empty()) throw RuinError(ErrorCode::ParseError, "empty integer");
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno == ERANGE || end != s.c_str() + s.size())
    throw RuinError(ErrorCode::ParseError, "bad integer '" + s + "'");
  return v;
}

}  // namespace

double parse_number(std::string_view token) {
  std::string s = trimmed(token);
  if (s.empty()) throw RuinError(ErrorCode::ParseError, "empty number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long num = parse_integer(s.substr(0, slash));
    long long den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw RuinError(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    return static_cast<double>(num) / static_cast<double>(den);
  }
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (errno == ERANGE || end != s.c_str() + s.size() || !std::isfinite(v))
    throw RuinError(ErrorCode::ParseError, "bad number '" + s + "'");
  return v;
}

ClaimsDistribution::ClaimsDistribution(std::vector<double> pmf)
    : pmf_(std::move(pmf)) {
  const int m = support_max();
  mean_ = 0.0;
  for (int k = 1; k <= m; ++k) mean_ += k * pmf_[k];
  // Fbar(k) accumulated from f(m) downwards: sums of nonnegative terms only.
  // Fbar(0) is pinned to 1 - f(0) so the identity holds exactly.
  tail_.assign(m, 0.0);
  double acc = 0.0;
  for (int k = m - 1; k >= 0; --k) {
    acc += pmf_[k + 1];
    tail_[k] = acc;
  }
  tail_[0] = 1.0 - pmf_[0];
}

double ClaimsDistribution::tail(int k) const {
  if (k < 0) throw RuinError(ErrorCode::ParseError, "tail index must be >= 0");
  if (k >= support_max()) return 0.0;
  return tail_[k];
}

ClaimsDistribution ClaimsDistribution::from_pmf(std::vector<double> pmf) {
  if (pmf.size() < 3)
    throw RuinError(ErrorCode::SupportTooSmall,
                    "need support {0,...,m} with m >= 2, got " +
                        std::to_string(pmf.size()) + " entries");
  for (size_t k = 0; k < pmf.size(); ++k) {
    if (!(pmf[k] >= 0.0) || !std::isfinite(pmf[k]))
      throw RuinError(ErrorCode::NegativeProbability,
                      "f(" + std::to_string(k) + ") = " + std::to_string(pmf[k]));
  }
  while (!pmf.empty() && pmf.back() == 0.0) pmf.pop_back();
  if (pmf.size() < 3)
    throw RuinError(ErrorCode::SupportTooSmall,
                    "support bound m < 2 after trimming trailing zeros");
  double sum = 0.0;
  for (double v : pmf) sum += v;
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw RuinError(ErrorCode::SumNotOne,
                    "pmf sums to " + std::to_string(sum));
  for (double& v : pmf) v /= sum;
  double mean = 0.0;
  for (size_t k = 1; k < pmf.size(); ++k) mean += static_cast<double>(k) * pmf[k];
  if (!(mean < 1.0))
    throw RuinError(ErrorCode::NetProfitViolated,
                    "mean claim " + std::to_string(mean) + " >= 1");
  ClaimsDistribution d(std::move(pmf));
  // Net profit forces f(0) >= 1 - mu_Y > 0.
  if (!(d.pmf_[0] >= 1.0 - d.mean_ - 1e-12))
    throw RuinError(ErrorCode::NetProfitViolated,
                    "f(0) inconsistent with mean");
  return d;
}

ClaimsDistribution ClaimsDistribution::parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw RuinError(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object() || !j.contains("pmf") || !j["pmf"].is_array())
    throw RuinError(ErrorCode::ParseError, "expected {\"pmf\": [...]}");
  std::vector<double> pmf;
  for (const auto& item : j["pmf"]) {
    if (item.is_number()) {
      pmf.push_back(item.get<double>());
    } else if (item.is_string()) {
      pmf.push_back(parse_number(item.get<std::string>()));
    } else {
      throw RuinError(ErrorCode::ParseError, "pmf entries must be numbers or fraction strings");
    }
  }
  return from_pmf(std::move(pmf));
}

ClaimsDistribution ClaimsDistribution::parse_text(std::string_view text) {
  std::vector<std::pair<long long, double>> entries;
  long long max_k = -1;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string k_tok, v_tok, extra;
    if (!(ls >> k_tok >> v_tok) || (ls >> extra))
      throw RuinError(ErrorCode::ParseError, "expected 'k value' on line '" + t + "'");
    long long k = parse_integer(k_tok);
    if (k < 0) throw RuinError(ErrorCode::ParseError, "negative claim size " + k_tok);
    if (k > 100000) throw RuinError(ErrorCode::ParseError, "claim size " + k_tok + " too large");
    entries.emplace_back(k, parse_number(v_tok));
    max_k = std::max(max_k, k);
  }
  if (max_k < 0) throw RuinError(ErrorCode::ParseError, "no pmf entries found");
  std::vector<double> pmf(static_cast<size_t>(max_k) + 1, 0.0);
  for (auto [k, v] : entries) pmf[static_cast<size_t>(k)] += v;
  return from_pmf(std::move(pmf));
}

ClaimsDistribution ClaimsDistribution::load_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw RuinError(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  std::string text = buf.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json(text);
  return parse_text(text);
}

}  // namespace ruinkit
