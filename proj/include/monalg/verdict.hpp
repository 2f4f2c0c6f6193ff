#ifndef MONALG_VERDICT_HPP
#define MONALG_VERDICT_HPP

#include <optional>
#include <utility>

namespace monalg {

enum class Outcome { Proved, Refuted, Unknown };

// Uniform result of semi-decidable searches: Proved carries a checkable
// certificate, Refuted a concrete witness, Unknown the bound that ran out.
template <class Cert, class Witness = Cert>
struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<Cert> certificate;
  std::optional<Witness> witness;
  long bound = 0;

  static Verdict proved(Cert c) {
    Verdict v;
    v.outcome = Outcome::Proved;
    v.certificate = std::move(c);
    return v;
  }
  static Verdict refuted(Witness w) {
    Verdict v;
    v.outcome = Outcome::Refuted;
    v.witness = std::move(w);
    return v;
  }
  static Verdict unknown(long bound) {
    Verdict v;
    v.outcome = Outcome::Unknown;
    v.bound = bound;
    return v;
  }

  bool is_proved() const { return outcome == Outcome::Proved; }
  bool is_refuted() const { return outcome == Outcome::Refuted; }
  bool is_unknown() const { return outcome == Outcome::Unknown; }
};

}  // namespace monalg

#endif  // MONALG_VERDICT_HPP
