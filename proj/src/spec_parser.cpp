#include "takagi/spec_parser.hpp"

namespace takagi {

ParseError::ParseError(std::string token, std::size_t position, const std::string& why)
    : std::invalid_argument("parse error at " + std::to_string(position) + " near '" + token +
                            "': " + why),
      token_(std::move(token)),
      position_(position) {}

namespace {

Rat parse_fraction(const std::string& spec, std::size_t pos) {
  const std::string body = spec.substr(pos);
  if (body.find('/') == std::string::npos) throw ParseError(body, pos, "expected INT/INT");
  try {
    return Rat::parse(body);
  } catch (const std::invalid_argument&) {
    throw ParseError(body, pos, "expected INT/INT");
  }
}

}  // namespace

BinaryExpansion parse_expansion_spec(const std::string& spec, std::uint64_t bit_budget) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError(spec, 0, "expected 'dyadic:', 'rational:' or 'gaps:'");
  const std::string head = spec.substr(0, colon);
  std::size_t pos = colon + 1;

  if (head == "dyadic" || head == "rational") {
    const Rat x = parse_fraction(spec, pos);
    if (head == "dyadic" && !x.is_dyadic()) {
      throw ParseError(spec.substr(pos), pos, "denominator is not a power of two");
    }
    if (x.sign() < 0 || x >= Rat(1)) throw ParseError(spec.substr(pos), pos, "value must lie in [0, 1)");
    return BinaryExpansion::of_rational(x);
  }
  if (head != "gaps") throw ParseError(head, 0, "unknown spec kind");

  DigitKind marks = DigitKind::ones;
  for (const auto* prefix : {"ones:", "zeros:"}) {
    const std::string p = prefix;
    if (spec.compare(pos, p.size(), p) == 0) {
      marks = p == "ones:" ? DigitKind::ones : DigitKind::zeros;
      pos += p.size();
      break;
    }
  }
  const auto sep = spec.find(':', pos);
  const std::string name = spec.substr(pos, sep == std::string::npos ? std::string::npos : sep - pos);
  const std::string params = sep == std::string::npos ? "" : spec.substr(sep + 1);
  if (name.empty()) throw ParseError(spec.substr(pos), pos, "missing rule name");
  GapSequencePtr seq;
  try {
    seq = builtin_generator(name, params);
  } catch (const std::invalid_argument& e) {
    const bool unknown = std::string(e.what()).starts_with("unknown");
    throw ParseError(unknown ? name : params, unknown ? pos : sep + 1, e.what());
  }
  return BinaryExpansion::of_gaps(std::move(seq), marks, bit_budget);
}

}  // namespace takagi
