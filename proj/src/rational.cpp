// Copyright 2026 The cipcert Authors
// Licensed under the Apache License, Version 2.0

#include "cipcert/rational.hpp"

#include "cipcert/errors.hpp"

namespace cipcert {

namespace {

mpz_class parse_mpz(const std::string& text) {
  if (text.empty()) throw ParseError("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw ParseError("bare sign is not an integer: '" + text + "'");
  for (std::size_t i = start; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9')
      throw ParseError("invalid integer literal: '" + text + "'");
  return mpz_class(text);
}

}  // namespace

Rat parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(parse_mpz(text));
  mpz_class num = parse_mpz(text.substr(0, slash));
  mpz_class den = parse_mpz(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in rational: '" + text + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Int rat_ceil(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw Error("ceiling does not fit in a 64-bit integer");
  return static_cast<Int>(q.get_si());
}

}  // namespace cipcert
