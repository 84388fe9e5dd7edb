#include "text.hpp"

#include <cctype>

#include "ffgal/poly.hpp"

namespace ffgal::detail {

namespace {

class Parser {
 public:
  Parser(const FieldPtr& f, std::string s, char v1, char v2) : F_(f), s_(std::move(s)), v1_(v1), v2_(v2) {}

  Terms run() {
    Terms t = expr();
    skip();
    if (pos_ != s_.size()) err("unexpected character");
    return t;
  }

 private:
  [[noreturn]] void err(const std::string& what) const {
    fail(Errc::Parse, what + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  int peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : -1;
  }
  bool starts_primary(int c) const {
    return c == '(' || c == '[' || (c >= 0 && std::isdigit(c)) || c == v1_ || (v2_ && c == v2_);
  }

  Terms expr() {
    Terms acc;
    bool first = true;
    for (;;) {
      int c = peek();
      bool neg = false;
      if (c == '+' || c == '-') {
        neg = c == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      Terms t = term();
      acc = neg ? sub(acc, t) : add(acc, t);
      first = false;
    }
    return acc;
  }

  Terms term() {
    Terms acc = factor();
    for (;;) {
      int c = peek();
      if (c == '*') {
        ++pos_;
        acc = mul(acc, factor());
      } else if (starts_primary(c)) {
        acc = mul(acc, factor());
      } else {
        break;
      }
    }
    return acc;
  }

  Terms factor() {
    Terms base = primary();
    if (peek() == '^') {
      ++pos_;
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) err("expected exponent");
      unsigned long e = std::stoul(s_.substr(start, pos_ - start));
      if (e > 100000) err("exponent too large");
      Terms r = constant(F_->one_coords());
      for (unsigned long i = 0; i < e; ++i) r = mul(r, base);
      return r;
    }
    return base;
  }

  Terms primary() {
    int c = peek();
    if (c == '(') {
      ++pos_;
      Terms t = expr();
      if (peek() != ')') err("expected ')'");
      ++pos_;
      return t;
    }
    if (c == '[') {
      size_t start = pos_;
      size_t close = s_.find(']', pos_);
      if (close == std::string::npos) err("unterminated element literal");
      pos_ = close + 1;
      try {
        return constant(FqElem::parse(F_, s_.substr(start, close + 1 - start)).coords());
      } catch (const Error& e) {
        err(e.what());
      }
    }
    if (c >= 0 && std::isdigit(c)) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits = s_.substr(start, pos_ - start);
      // reduce mod p digit by digit so huge literals never overflow
      u64 v = 0;
      for (char d : digits) v = F_->addp(F_->mulp(v, 10 % F_->p()), static_cast<u64>(d - '0') % F_->p());
      Coords co = F_->zero_coords();
      co[0] = v;
      return constant(co);
    }
    if (c == v1_ || (v2_ && c == v2_)) {
      ++pos_;
      Terms t;
      t[c == v1_ ? std::pair{1, 0} : std::pair{0, 1}] = F_->one_coords();
      return t;
    }
    err("expected a term");
  }

  Terms constant(const Coords& c) {
    Terms t;
    if (!F_->is_zero(c.data())) t[{0, 0}] = c;
    return t;
  }
  Terms add(Terms a, const Terms& b) {
    for (const auto& [k, v] : b) {
      auto it = a.find(k);
      if (it == a.end()) {
        a[k] = v;
      } else {
        F_->add(it->second.data(), v.data(), it->second.data());
        if (F_->is_zero(it->second.data())) a.erase(it);
      }
    }
    return a;
  }
  Terms sub(const Terms& a, Terms b) {
    for (auto& [k, v] : b) F_->neg(v.data(), v.data());
    return add(a, b);
  }
  Terms mul(const Terms& a, const Terms& b) {
    Terms r;
    Coords prod(F_->nu());
    for (const auto& [ka, va] : a)
      for (const auto& [kb, vb] : b) {
        F_->mul(va.data(), vb.data(), prod.data());
        Terms one;
        one[{ka.first + kb.first, ka.second + kb.second}] = prod;
        r = add(std::move(r), one);
      }
    return r;
  }

  FieldPtr F_;
  std::string s_;
  char v1_, v2_;
  size_t pos_ = 0;
};

std::string normalize_minus(const std::string& s) {
  // accept the Unicode minus sign U+2212
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 && static_cast<unsigned char>(s[i + 1]) == 0x88 &&
        static_cast<unsigned char>(s[i + 2]) == 0x92) {
      out += '-';
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

Terms parse_terms(const FieldPtr& f, const std::string& text, char v1, char v2) {
  return Parser(f, normalize_minus(text), v1, v2).run();
}

}  // namespace ffgal::detail

namespace ffgal {

std::string to_string(const Poly& f, char var) {
  if (f.is_zero()) return "0";
  std::string out;
  const Field& F = f.field();
  for (int i = f.deg(); i >= 0; --i) {
    if (F.is_zero(f.coef(i))) continue;
    if (!out.empty()) out += " + ";
    std::string c = f.coeff(i).to_string();
    std::string mono = i == 0 ? "" : i == 1 ? std::string(1, var) : std::string(1, var) + "^" + std::to_string(i);
    if (i == 0)
      out += c;
    else if (F.is_one(f.coef(i)))
      out += mono;
    else
      out += c + "*" + mono;
  }
  return out;
}

Poly parse_poly(const FieldPtr& f, const std::string& text, char var) {
  detail::Terms t = detail::parse_terms(f, text, var, 0);
  Poly r(f);
  for (const auto& [k, v] : t) r.set_coeff(k.first, v.data());
  r.normalize();
  return r;
}

}  // namespace ffgal
