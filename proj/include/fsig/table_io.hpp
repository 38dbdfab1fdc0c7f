#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsig/rational.hpp"
#include "fsig/sigcore.hpp"

namespace fsig {

// Writers emit LF line endings and fixed 12-significant-digit decimals so
// output is byte-identical across runs and platforms. The *_num / *_den
// columns carry the exact value; the decimal column is display-only.

inline void write_samples_csv(std::ostream& os,
                              const std::vector<SignatureSample>& samples,
                              const std::string& value_prefix) {
  os << "a,t_num,t_den," << value_prefix << "_num," << value_prefix << "_den,"
     << value_prefix << "_dec\n";
  for (const SignatureSample& s : samples) {
    os << s.a << "," << numerator(s.t).str() << "," << denominator(s.t).str()
       << "," << numerator(s.value).str() << ","
       << denominator(s.value).str() << "," << decimal_string(s.value)
       << "\n";
  }
}

inline void write_samples_json(std::ostream& os,
                               const std::vector<SignatureSample>& samples,
                               const std::string& value_prefix) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SignatureSample& s : samples) {
    nlohmann::json row;
    row["a"] = s.a;
    row["t_num"] = numerator(s.t).str();
    row["t_den"] = denominator(s.t).str();
    row[value_prefix + "_num"] = numerator(s.value).str();
    row[value_prefix + "_den"] = denominator(s.value).str();
    row[value_prefix + "_dec"] = decimal_string(s.value);
    arr.push_back(std::move(row));
  }
  os << arr.dump(2) << "\n";
}

inline void write_signature_csv(std::ostream& os, const SignatureTable& t) {
  write_samples_csv(os, t.samples(), "s");
}

inline void write_signature_json(std::ostream& os, const SignatureTable& t) {
  write_samples_json(os, t.samples(), "s");
}

inline void write_slopes_csv(std::ostream& os,
                             const std::vector<SignatureSample>& slopes) {
  write_samples_csv(os, slopes, "ds");
}

inline void write_slopes_json(std::ostream& os,
                              const std::vector<SignatureSample>& slopes) {
  write_samples_json(os, slopes, "ds");
}

inline void write_sequence_csv(std::ostream& os,
                               const std::vector<Rational>& values) {
  os << "e,v_num,v_den,v_dec\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << (i + 1) << "," << numerator(values[i]).str() << ","
       << denominator(values[i]).str() << "," << decimal_string(values[i])
       << "\n";
  }
}

inline void write_sequence_json(std::ostream& os,
                                const std::vector<Rational>& values) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    nlohmann::json row;
    row["e"] = i + 1;
    row["v_num"] = numerator(values[i]).str();
    row["v_den"] = denominator(values[i]).str();
    row["v_dec"] = decimal_string(values[i]);
    arr.push_back(std::move(row));
  }
  os << arr.dump(2) << "\n";
}

// Reads back a CSV written by write_samples_csv; the exact columns are
// authoritative, the decimal column is ignored.
inline std::vector<SignatureSample> read_samples_csv(std::istream& is) {
  std::vector<SignatureSample> out;
  std::string line;
  if (!std::getline(is, line)) {
    throw std::runtime_error("empty table");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6) {
      throw std::runtime_error("malformed table row: " + line);
    }
    SignatureSample s;
    s.a = std::stoull(fields[0]);
    s.t = Rational(BigInt(fields[1]), BigInt(fields[2]));
    s.value = Rational(BigInt(fields[3]), BigInt(fields[4]));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace fsig
