#include "uacx/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace uacx {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  return parts;
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("map spec: bad number for ") +
                                what + ": '" + s + "'");
  }
}

std::vector<std::complex<double>> parse_complex_list(const std::string& s,
                                                     const char* what) {
  std::vector<std::complex<double>> out;
  if (trim(s).empty()) return out;
  for (const auto& pair : split(s, ';')) {
    const auto parts = split(pair, ',');
    if (parts.size() != 2)
      throw std::invalid_argument(std::string("map spec: ") + what +
                                  " entries must be 're,im' pairs");
    out.emplace_back(parse_double(parts[0], what), parse_double(parts[1], what));
  }
  return out;
}

}  // namespace

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

CircleEndomorphism parse_map_spec(const std::string& text) {
  std::map<std::string, std::string> fields;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("map spec: expected 'key = value': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!fields.emplace(key, value).second)
      throw std::invalid_argument("map spec: duplicate key " + key);
  }

  const auto take = [&](const char* key) -> std::string {
    auto it = fields.find(key);
    if (it == fields.end()) return "";
    std::string v = it->second;
    fields.erase(it);
    return v;
  };

  const std::string kind = take("kind");
  const std::string degree_text = take("degree");
  if (kind.empty() || degree_text.empty())
    throw std::invalid_argument("map spec: 'kind' and 'degree' are required");
  const int degree = static_cast<int>(parse_double(degree_text, "degree"));

  CircleEndomorphism endo;
  if (kind == "power") {
    endo = CircleEndomorphism::power(degree);
  } else if (kind == "blaschke") {
    endo = CircleEndomorphism::blaschke(
        degree, parse_complex_list(take("alphas"), "alphas"),
        parse_complex_list(take("betas"), "betas"));
  } else if (kind == "perturbed") {
    const std::string samples = take("perturbation_samples");
    if (samples.empty())
      throw std::invalid_argument(
          "map spec: perturbed maps need perturbation_samples");
    std::vector<double> values;
    for (const auto& item : split(samples, ','))
      values.push_back(parse_double(item, "perturbation_samples"));
    endo = CircleEndomorphism::perturbed(degree, std::move(values));
  } else {
    throw std::invalid_argument("map spec: unknown kind '" + kind + "'");
  }

  if (!fields.empty())
    throw std::invalid_argument("map spec: unexpected key '" +
                                fields.begin()->first + "'");
  return endo;
}

MapSpecFile load_map_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map spec " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  MapSpecFile spec;
  spec.text = buffer.str();
  spec.hash = fnv1a_hex(spec.text);
  spec.endo = parse_map_spec(spec.text);
  return spec;
}

std::string profile_csv(const VanishingProfile& profile) {
  std::string text = "y,value,n_max,kind\n";
  for (std::size_t i = 0; i < profile.y.size(); ++i)
    text += format_full(profile.y[i]) + "," + format_full(profile.value[i]) +
            "," + std::to_string(profile.n_max) + "," + profile.kind + "\n";
  return text;
}

std::string field_csv(const BeltramiField& field) {
  std::string text = "x,y,re_mu,im_mu,abs_mu\n";
  for (std::size_t iy = 0; iy < field.y.size(); ++iy)
    for (std::size_t ix = 0; ix < field.x.size(); ++ix) {
      const auto& mu = field.mu[iy][ix];
      text += format_full(field.x[ix]) + "," + format_full(field.y[iy]) + "," +
              format_full(mu.real()) + "," + format_full(mu.imag()) + "," +
              format_full(std::abs(mu)) + "\n";
    }
  return text;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace uacx
