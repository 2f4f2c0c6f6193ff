#include "monalg/jsonio.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

#include "monalg/numeric.hpp"

namespace monalg {

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  for (std::size_t i = from; i < to; ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Int int_from_string(const std::string& text) {
  std::size_t start = text.size() > 0 && text[0] == '-' ? 1 : 0;
  if (!all_digits(text, start, text.size()))
    throw std::invalid_argument("malformed integer: '" + text + "'");
  return Int(text);
}

// Exact rational from either a JSON string or an integer number.
Rat rat_from_field(const Json& v, const char* what, std::size_t index) {
  try {
    if (v.is_string()) return rat_from_string(v.get<std::string>());
    if (v.is_number_integer())
      return Rat(Int(v.dump()));  // dump of an integer is its decimal text
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(what) + ": " + e.what(), index);
  }
  throw ParseError(std::string(what) + " must be a string or an integer",
                   index);
}

template <typename TermRange>
Json terms_to_json_impl(const TermRange& terms) {
  Json arr = Json::array();
  for (const auto& [e, c] : terms) {
    Json t = Json::object();
    t["c"] = c;
    t["e"] = e;
    arr.push_back(std::move(t));
  }
  Json out = Json::object();
  out["terms"] = std::move(arr);
  return out;
}

}  // namespace

std::string rat_to_string(const Rat& q) { return q.get_str(); }

Rat rat_from_string(const std::string& text) {
  const std::size_t slash = text.find('/');
  const std::size_t num_end = slash == std::string::npos ? text.size() : slash;
  const std::size_t start = !text.empty() && text[0] == '-' ? 1 : 0;
  if (!all_digits(text, start, num_end))
    throw std::invalid_argument("malformed rational: '" + text + "'");
  Int num(text.substr(0, num_end));
  Int den(1);
  if (slash != std::string::npos) {
    if (!all_digits(text, slash + 1, text.size()))
      throw std::invalid_argument("malformed rational: '" + text + "'");
    den = Int(text.substr(slash + 1));
    if (den == 0)
      throw std::invalid_argument("zero denominator: '" + text + "'");
  }
  return make_rat(num, den);
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Proved:
      return "proved";
    case Outcome::Refuted:
      return "refuted";
    case Outcome::Unknown:
      return "unknown";
  }
  return "unknown";
}

const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Skip:
      return "skip";
  }
  return "fail";
}

Json zpoly_to_json(const ZPoly& f) {
  std::vector<std::pair<std::string, std::string>> terms;
  for (long i = f.degree(); i >= 0; --i) {
    const Int& c = f.coeff(static_cast<std::size_t>(i));
    if (c != 0) terms.push_back({std::to_string(i), c.get_str()});
  }
  return terms_to_json_impl(terms);
}

Json qpoly_to_json(const QPoly& f) {
  std::vector<std::pair<std::string, std::string>> terms;
  for (long i = f.degree(); i >= 0; --i) {
    const Rat& c = f.coeff(static_cast<std::size_t>(i));
    if (c != 0) terms.push_back({std::to_string(i), rat_to_string(c)});
  }
  return terms_to_json_impl(terms);
}

Json dyadic_to_json(const DyadicPoly& f) {
  std::vector<std::pair<std::string, std::string>> terms;
  for (const auto& [e, c] : f.terms())
    terms.push_back(
        {rat_to_string(make_rat(e.num, pow_int(Int(2), e.log_den))),
         rat_to_string(c)});
  return terms_to_json_impl(terms);
}

Json mexpr_to_json(const MExpr& f) {
  std::vector<std::pair<std::string, std::string>> terms;
  for (const MExpr::Term& t : f.terms())
    terms.push_back({rat_to_string(t.exponent), rat_to_string(t.coeff)});
  return terms_to_json_impl(terms);
}

std::vector<ParsedTerm> terms_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ParseError("expected an object with a 'terms' array", 0);
  std::vector<ParsedTerm> out;
  std::size_t index = 0;
  for (const Json& t : j["terms"]) {
    if (!t.is_object() || !t.contains("e") || !t.contains("c"))
      throw ParseError("term must be an object with 'e' and 'c'", index);
    ParsedTerm term;
    term.exponent = rat_from_field(t["e"], "exponent", index);
    term.coeff = rat_from_field(t["c"], "coefficient", index);
    term.position = index;
    out.push_back(std::move(term));
    ++index;
  }
  return out;
}

ZPoly zpoly_from_json(const Json& j) {
  return zpoly_from_terms(terms_from_json(j));
}

QPoly qpoly_from_json(const Json& j) {
  return qpoly_from_terms(terms_from_json(j));
}

DyadicPoly dyadic_from_json(const Json& j) {
  return dyadic_from_terms(terms_from_json(j));
}

MExpr mexpr_from_json(const Json& j, const MonoidHandle& monoid) {
  return mexpr_from_terms(terms_from_json(j), monoid);
}

Json schedule_to_json(const PrimeSchedule& sched) {
  Json arr = Json::array();
  for (const SchedulePair& pr : sched.pairs())
    arr.push_back(Json::array({pr.q.get_str(), pr.p.get_str()}));
  Json out = Json::object();
  out["pairs"] = std::move(arr);
  return out;
}

PrimeSchedule schedule_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array())
    throw std::invalid_argument(
        "schedule: expected an object with a 'pairs' array");
  std::vector<SchedulePair> pairs;
  for (const Json& entry : j["pairs"]) {
    if (!entry.is_array() || entry.size() != 2)
      throw std::invalid_argument(
          "schedule: each pair must be a two-element array");
    SchedulePair pr;
    for (int k = 0; k < 2; ++k) {
      const Json& v = entry[k];
      Int value;
      if (v.is_string())
        value = int_from_string(v.get<std::string>());
      else if (v.is_number_integer())
        value = Int(v.dump());
      else
        throw std::invalid_argument(
            "schedule: entries must be strings or integers");
      (k == 0 ? pr.q : pr.p) = value;
    }
    pairs.push_back(std::move(pr));
  }
  return schedule_from_pairs(std::move(pairs));
}

Json suite_report_to_json(const SuiteReport& rep) {
  Json out = Json::object();
  out["v"] = 1;
  out["kind"] = "suite-report";
  out["suite"] = rep.suite;
  out["seed"] = rep.seed;
  out["samples"] = rep.samples;
  out["schedule"] = rep.schedule_fingerprint;
  out["pass"] = rep.passed();
  out["failures"] = rep.failures();
  Json checks = Json::array();
  for (const SuiteCheck& c : rep.checks) {
    Json item = Json::object();
    item["tag"] = c.tag;
    item["instance"] = c.instance;
    item["status"] = check_status_name(c.status);
    item["detail"] = c.detail;
    checks.push_back(std::move(item));
  }
  out["checks"] = std::move(checks);
  return out;
}

}  // namespace monalg
