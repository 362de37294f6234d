#include "majent/text_io.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace majent {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string fmt_complex(Complex z) {
  return "(" + fmt_double(z.real()) + "," + fmt_double(z.imag()) + ")";
}

namespace {

std::string format_mask(ModeMask mask) {
  if (mask == 0) return "1";
  std::string s;
  ModeMask rest = mask;
  while (rest != 0) {
    const int bit = __builtin_ctz(rest);
    rest &= rest - 1;
    s += "c" + std::to_string(bit + 1);
  }
  return s;
}

}  // namespace

std::string format_element(const CliffordElement& e) {
  if (e.is_zero()) return "(0,0) 1";
  std::string s;
  for (const auto& [mask, coeff] : e.terms()) {
    if (!s.empty()) s += " + ";
    s += fmt_complex(coeff) + " " + format_mask(mask);
  }
  return s;
}

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(unsigned(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  double number() {
    skip_ws();
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(text.substr(pos), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("expected a number at position " +
                                  std::to_string(pos));
    }
    pos += used;
    return v;
  }
  int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(unsigned(text[pos]))) ++pos;
    if (pos == start) {
      throw std::invalid_argument("expected a mode index at position " +
                                  std::to_string(start));
    }
    return std::stoi(text.substr(start, pos - start));
  }
};

}  // namespace

CliffordElement parse_element(const std::string& text, int n_modes) {
  Cursor cur{text};
  CliffordElement out(n_modes);
  bool any = false;
  while (!cur.eof()) {
    if (any && !cur.consume('+')) {
      throw std::invalid_argument("expected '+' between terms");
    }
    Complex coeff(1, 0);
    bool has_coeff = false;
    if (cur.peek() == '(') {
      cur.consume('(');
      const double re = cur.number();
      if (!cur.consume(',')) throw std::invalid_argument("expected ','");
      const double im = cur.number();
      if (!cur.consume(')')) throw std::invalid_argument("expected ')'");
      coeff = Complex(re, im);
      has_coeff = true;
    }
    ModeMask mask = 0;
    bool has_mono = false;
    if (cur.peek() == '1') {
      cur.consume('1');
      has_mono = true;
    } else {
      while (cur.peek() == 'c') {
        cur.consume('c');
        const int mode = cur.integer();
        if (mode < 1 || mode > n_modes) {
          throw std::invalid_argument("mode index out of range: c" +
                                      std::to_string(mode));
        }
        const ModeMask bit = ModeMask(1) << (mode - 1);
        if (mask & bit) {
          throw std::invalid_argument("repeated mode in monomial: c" +
                                      std::to_string(mode));
        }
        mask |= bit;
        has_mono = true;
      }
    }
    if (!has_coeff && !has_mono) {
      throw std::invalid_argument("empty term at position " +
                                  std::to_string(cur.pos));
    }
    out.add_term(mask, coeff);
    any = true;
  }
  if (!any) throw std::invalid_argument("empty element expression");
  return out;
}

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_stack_.empty()) {
    if (!first_stack_.back()) out_ += ",";
    first_stack_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ += "{";
  first_stack_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += "}";
  first_stack_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  separator();
  out_ += "\"" + k + "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
  separator();
  out_ += "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out_ += '\\';
    out_ += c;
  }
  out_ += "\"";
  return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

JsonWriter& JsonWriter::value(double x) {
  separator();
  out_ += fmt_double(x);
  return *this;
}

JsonWriter& JsonWriter::value(int x) {
  separator();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(bool b) {
  separator();
  out_ += b ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::null_value() {
  separator();
  out_ += "null";
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ += "[";
  first_stack_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += "]";
  first_stack_.pop_back();
  return *this;
}

}  // namespace majent
