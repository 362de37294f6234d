#pragma once

#include <string>
#include <vector>

#include "majent/clifford.hpp"

namespace majent {

/// Fixed 12-significant-digit float formatting used by all reports.
std::string fmt_double(double x);
std::string fmt_complex(Complex z);

/// Textual form of an element: `(re,im) c1c2 + (re,im) 1`, terms in
/// ascending mask order, `1` for the identity monomial.
std::string format_element(const CliffordElement& e);

/// Parses the serialization grammar; also accepts a bare monomial
/// (`c1c3`, coefficient one) and a bare coefficient (`(re,im)`,
/// identity monomial).
CliffordElement parse_element(const std::string& text, int n_modes);

/// Minimal ordered JSON writer with deterministic float formatting.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(const std::string& s);
  JsonWriter& value(const char* s);
  JsonWriter& value(double x);
  JsonWriter& value(int x);
  JsonWriter& value(bool b);
  JsonWriter& null_value();
  JsonWriter& begin_array();
  JsonWriter& end_array();

  std::string str() const { return out_; }

 private:
  void separator();
  std::string out_;
  std::vector<bool> first_stack_;
  bool pending_key_ = false;
};

}  // namespace majent
