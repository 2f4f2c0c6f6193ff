// Command-line front end: exact parsing, subcommand dispatch into the
// algebra modules, and the law-verification suite runner. Output is plain
// text by default or single-line JSON objects (schema "v":1) with --json.
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
// error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "monalg/betam.hpp"
#include "monalg/dyadic.hpp"
#include "monalg/factorz.hpp"
#include "monalg/jsonio.hpp"
#include "monalg/malg.hpp"
#include "monalg/mr.hpp"
#include "monalg/parse.hpp"
#include "monalg/qpoly.hpp"
#include "monalg/split.hpp"
#include "monalg/suites.hpp"
#include "monalg/zpoly.hpp"

namespace {

using namespace monalg;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct Global {
  bool json = false;
  std::uint64_t seed = 7;
  std::string schedule_path;
  unsigned degmax = 24;
  unsigned long depth = 8;

  std::optional<PrimeSchedule> sched_;

  const PrimeSchedule& schedule() {
    if (!sched_) {
      if (schedule_path.empty()) {
        sched_ = gen_primes(12);
      } else {
        std::ifstream in(schedule_path);
        if (!in)
          throw std::invalid_argument("cannot open schedule file: " +
                                      schedule_path);
        Json j = Json::parse(in, nullptr, true);
        sched_ = schedule_from_json(j);
      }
    }
    return *sched_;
  }
};

Json envelope(const char* kind) {
  Json j = Json::object();
  j["v"] = 1;
  j["kind"] = kind;
  return j;
}

void emit(const Global& g, const Json& j, const std::string& text) {
  if (g.json)
    std::cout << j.dump() << "\n";
  else
    std::cout << text;
}

std::string verdict_word(Outcome o) { return outcome_name(o); }

// ---------------------------------------------------------------------------
// factor

int cmd_factor(Global& g, const std::string& expr) {
  ZPoly f = parse_zpoly(expr);
  ZFactorization fz = factor_z(f);
  Json j = envelope("factorization");
  j["input"] = zpoly_to_json(f);
  j["content"] = fz.content.get_str();
  Json arr = Json::array();
  std::ostringstream text;
  text << "content: " << fz.content.get_str() << "\n";
  for (const auto& [p, mult] : fz.factors) {
    Json item = Json::object();
    item["poly"] = zpoly_to_json(p);
    item["text"] = p.to_string();
    item["multiplicity"] = mult;
    arr.push_back(std::move(item));
    text << "factor: (" << p.to_string() << ")^" << mult << "\n";
  }
  j["factors"] = std::move(arr);
  emit(g, j, text.str());
  return kExitPass;
}

// ---------------------------------------------------------------------------
// split-seq

int cmd_split_seq(Global& g, const std::string& expr, bool anti_lex) {
  ZPoly f = parse_zpoly(expr);
  SplittingTrace t = splitting_trace(
      f, g.depth, anti_lex ? SplitChooser::AntiLex : SplitChooser::Lex);
  Json j = envelope("splitting-trace");
  j["input"] = zpoly_to_json(f);
  j["depth"] = g.depth;
  j["letters"] = letters_string(t);
  Json terms = Json::array();
  for (const ZPoly& p : t.terms) terms.push_back(p.to_string());
  j["terms"] = std::move(terms);
  std::ostringstream text;
  text << "letters: " << letters_string(t) << "\n";
  for (std::size_t i = 0; i < t.terms.size(); ++i)
    text << "term " << i << ": " << t.terms[i].to_string() << "\n";
  if (is_nice(t.terms.front())) {
    Json pos = Json::array();
    for (std::size_t a : s_positions(t)) pos.push_back(a);
    Json gaps = Json::array();
    for (std::size_t b : gap_sequence(t)) gaps.push_back(b);
    j["s_positions"] = std::move(pos);
    j["gaps"] = std::move(gaps);
    j["special_count"] = special_count(t);
    text << "special count: " << special_count(t) << "\n";
  }
  emit(g, j, text.str());
  return kExitPass;
}

// ---------------------------------------------------------------------------
// good

int cmd_good(Global& g, const std::string& expr) {
  ZPoly f = parse_zpoly(expr);
  const unsigned n_max = static_cast<unsigned>(g.depth);
  GoodnessReport rep = goodness_level(f, n_max);
  Json j = envelope("goodness");
  j["input"] = zpoly_to_json(f);
  j["level"] = rep.level;
  j["checked_up_to"] = rep.checked_up_to;
  std::ostringstream text;
  text << "level: " << rep.level << " (checked up to " << rep.checked_up_to
       << ")\n";
  emit(g, j, text.str());
  return kExitPass;
}

// ---------------------------------------------------------------------------
// atomic-qm12

int cmd_atomic(Global& g, const std::string& expr) {
  DyadicPoly f = parse_dyadic(expr);
  AtomicityReport rep = is_atomic_qm12(f);
  Json j = envelope("atomicity");
  j["input"] = dyadic_to_json(f);
  j["atomic"] = rep.atomic;
  std::ostringstream text;
  text << (rep.atomic ? "atomic" : "not atomic") << "\n";
  if (rep.offender) {
    j["offender"] = dyadic_to_json(*rep.offender);
    j["offender_text"] = rep.offender->to_string();
    text << "offender: " << rep.offender->to_string() << "\n";
  }
  if (!rep.factors.empty()) {
    Json arr = Json::array();
    for (const DyadicPoly& p : rep.factors) {
      arr.push_back(p.to_string());
      text << "atomic factor: " << p.to_string() << "\n";
    }
    j["factors"] = std::move(arr);
  }
  emit(g, j, text.str());
  return kExitPass;
}

// ---------------------------------------------------------------------------
// split-tree

Json tree_to_json(const SplitTree& t) {
  Json j = Json::object();
  j["root"] = dyadic_to_json(t.root);
  j["text"] = t.root.to_string();
  j["evidence_bound"] = t.evidence_bound;
  if (!t.is_leaf()) {
    j["left"] = tree_to_json(*t.left);
    j["right"] = tree_to_json(*t.right);
  }
  return j;
}

void tree_to_text(const SplitTree& t, unsigned indent, std::ostream& os) {
  os << std::string(indent * 2, ' ') << t.root.to_string();
  if (t.is_leaf()) os << "  [leaf, evidence bound " << t.evidence_bound << "]";
  os << "\n";
  if (!t.is_leaf()) {
    tree_to_text(*t.left, indent + 1, os);
    tree_to_text(*t.right, indent + 1, os);
  }
}

int cmd_split_tree(Global& g, const std::string& expr) {
  DyadicPoly f = parse_dyadic(expr);
  SplitTree t = splitting_tree(f, g.depth);
  Json j = envelope("split-tree");
  j["depth"] = g.depth;
  j["tree"] = tree_to_json(t);
  std::ostringstream text;
  tree_to_text(t, 0, text);
  emit(g, j, text.str());
  return kExitPass;
}

// ---------------------------------------------------------------------------
// mr

int cmd_mr_member(Global& g, const std::string& qtext) {
  const Rat q = rat_from_string(qtext);
  MrContext ctx = MrContext::mr34();
  MrVerdict v = membership_mr(q, ctx, g.degmax);
  Json j = envelope("mr-membership");
  j["q"] = rat_to_string(q);
  j["verdict"] = verdict_word(v.outcome);
  std::ostringstream text;
  text << verdict_word(v.outcome) << "\n";
  if (v.is_proved()) {
    Json digits = Json::array();
    for (const Int& c : *v.certificate) digits.push_back(c.get_str());
    j["digits"] = std::move(digits);
    text << "digits (coefficients of (3/4)^i): ";
    for (std::size_t i = 0; i < v.certificate->size(); ++i)
      text << (i ? " " : "") << (*v.certificate)[i].get_str();
    text << "\n";
  }
  if (v.is_unknown()) j["bound"] = v.bound;
  emit(g, j, text.str());
  return kExitPass;
}

int cmd_mr_chain(Global& g, unsigned long count) {
  MrChain34 ch = non_accp_chain_mr34(count);
  Json j = envelope("mr-chain");
  Json els = Json::array(), difs = Json::array();
  for (const Rat& e : ch.elements) els.push_back(rat_to_string(e));
  for (const Rat& d : ch.differences) difs.push_back(rat_to_string(d));
  j["elements"] = std::move(els);
  j["differences"] = std::move(difs);
  std::ostringstream text;
  for (std::size_t i = 0; i < ch.elements.size(); ++i)
    text << "b_" << i << " = " << rat_to_string(ch.elements[i]) << "\n";
  emit(g, j, text.str());
  return kExitPass;
}

int cmd_mr_atoms(Global& g, unsigned long n_max) {
  std::vector<Rat> atoms = atoms_mr34(n_max);
  Json j = envelope("mr-atoms");
  Json arr = Json::array();
  std::ostringstream text;
  for (const Rat& a : atoms) {
    arr.push_back(rat_to_string(a));
    text << rat_to_string(a) << "\n";
  }
  j["atoms"] = std::move(arr);
  emit(g, j, text.str());
  return kExitPass;
}

int cmd_mr_accp(Global& g, const std::string& qtext) {
  const Rat q = rat_from_string(qtext);
  auto v = satisfies_accp_mr34(q, g.depth);
  Json j = envelope("mr-accp");
  j["q"] = rat_to_string(q);
  j["verdict"] = verdict_word(v.outcome);
  std::ostringstream text;
  text << verdict_word(v.outcome) << "\n";
  if (v.is_proved()) {
    j["certificate"] = v.certificate->kind == MrAccpCert::Kind::Zero
                           ? "zero"
                           : "atom";
    if (v.certificate->kind == MrAccpCert::Kind::Atom) {
      j["atom_index"] = v.certificate->atom_index;
      text << "atom index " << v.certificate->atom_index << "\n";
    }
  } else if (v.is_refuted() && v.witness) {
    Json arr = Json::array();
    for (const Rat& e : *v.witness) arr.push_back(rat_to_string(e));
    j["descending_chain"] = std::move(arr);
    text << "descending chain of " << v.witness->size() << " elements\n";
  } else if (v.is_unknown()) {
    j["bound"] = v.bound;
  }
  emit(g, j, text.str());
  return kExitPass;
}

// ---------------------------------------------------------------------------
// monoid-m

int cmd_m_schedule(Global& g, unsigned long count, const std::string& save) {
  const PrimeSchedule* sched;
  std::optional<PrimeSchedule> generated;
  if (count > 0) {
    generated = gen_primes(count);
    sched = &*generated;
  } else {
    sched = &g.schedule();
  }
  Json j = envelope("schedule");
  j["fingerprint"] = schedule_fingerprint(*sched);
  j["pairs"] = schedule_to_json(*sched)["pairs"];
  std::ostringstream text;
  text << "fingerprint: " << schedule_fingerprint(*sched) << "\n";
  for (unsigned long n = 1; n <= sched->size(); ++n)
    text << "rung " << n << ": q = " << sched->q(n).get_str()
         << ", p = " << sched->p(n).get_str() << "\n";
  if (!save.empty()) {
    std::ofstream out(save);
    if (!out)
      throw std::invalid_argument("cannot write schedule file: " + save);
    out << schedule_to_json(*sched).dump() << "\n";
    text << "saved to " << save << "\n";
  }
  emit(g, j, text.str());
  return kExitPass;
}

int cmd_m_decompose(Global& g, const std::string& qtext) {
  const Rat q = rat_from_string(qtext);
  const PrimeSchedule& s = g.schedule();
  std::optional<NCanonical> form = canonical_decompose_N(q, s);
  Json j = envelope("canonical-form");
  j["q"] = rat_to_string(q);
  j["member"] = form.has_value();
  std::ostringstream text;
  if (!form) {
    text << "not a member of the ambient monoid\n";
  } else {
    j["nu"] = form->nu.get_str();
    Json cs = Json::object();
    for (const auto& [n, c] : form->c) cs[std::to_string(n)] = c.get_str();
    j["c"] = std::move(cs);
    j["sigma"] = form->sigma().get_str();
    text << "nu = " << form->nu.get_str() << "\n";
    for (const auto& [n, c] : form->c)
      text << "c_" << n << " = " << c.get_str() << "\n";
    text << "sigma = " << form->sigma().get_str() << "\n";
  }
  emit(g, j, text.str());
  return kExitPass;
}

int cmd_m_member(Global& g, const std::string& qtext) {
  const Rat q = rat_from_string(qtext);
  const PrimeSchedule& s = g.schedule();
  MVerdict v = membership_M(q, s);
  Json j = envelope("m-membership");
  j["q"] = rat_to_string(q);
  j["verdict"] = verdict_word(v.outcome);
  std::ostringstream text;
  text << verdict_word(v.outcome) << "\n";
  if (v.is_proved()) {
    Json betas = Json::array();
    for (unsigned long idx : v.certificate->beta_indices)
      betas.push_back(idx);
    j["beta_indices"] = std::move(betas);
    j["residual_nu"] = v.certificate->a_part.nu.get_str();
    text << "beta summands: " << v.certificate->beta_indices.size() << "\n";
  }
  if (v.is_unknown()) j["bound"] = v.bound;
  emit(g, j, text.str());
  return kExitPass;
}

int cmd_m_indicator(Global& g, const std::string& btext, long rung,
                    bool inf) {
  const Rat b = rat_from_string(btext);
  const PrimeSchedule& s = g.schedule();
  Json j = envelope("indicator");
  j["b"] = rat_to_string(b);
  std::ostringstream text;
  if (inf) {
    const unsigned long value = indicator_inf(b, s);
    j["which"] = "inf";
    j["value"] = value;
    text << "I_inf = " << value << "\n";
  } else {
    if (rung <= 0)
      throw std::invalid_argument("indicator: provide --n <rung> or --inf");
    const Int value = indicator_n(b, static_cast<unsigned long>(rung), s);
    j["which"] = "n";
    j["n"] = rung;
    j["value"] = value.get_str();
    text << "I_" << rung << " = " << value.get_str() << "\n";
  }
  emit(g, j, text.str());
  return kExitPass;
}

int cmd_m_chain(Global& g, unsigned long count) {
  const PrimeSchedule& s = g.schedule();
  if (count == 0) count = s.size();
  MChain ch = non_accp_chain_M(count, s);
  Json j = envelope("m-chain");
  Json els = Json::array(), difs = Json::array();
  for (const Rat& e : ch.elements) els.push_back(rat_to_string(e));
  for (const Rat& d : ch.differences) difs.push_back(rat_to_string(d));
  j["elements"] = std::move(els);
  j["differences"] = std::move(difs);
  std::ostringstream text;
  text << count << " strictly ascending ideal steps (elements are doubled "
          "near-units)\n";
  for (std::size_t i = 0; i < ch.elements.size() && i < 4; ++i)
    text << "b_" << i << " = " << rat_to_string(ch.elements[i]) << "\n";
  if (ch.elements.size() > 4) text << "...\n";
  emit(g, j, text.str());
  return kExitPass;
}

int cmd_m_atom(Global& g, const std::string& qtext) {
  const Rat q = rat_from_string(qtext);
  const PrimeSchedule& s = g.schedule();
  MAtomVerdict v = is_atom_M(q, s);
  Json j = envelope("m-atom");
  j["q"] = rat_to_string(q);
  j["verdict"] = verdict_word(v.outcome);
  std::ostringstream text;
  text << verdict_word(v.outcome) << "\n";
  if (v.is_proved()) {
    const char* kind = v.certificate->kind == MAtomCert::Kind::BetaAtom
                           ? "beta"
                           : (v.certificate->kind == MAtomCert::Kind::A2Atom
                                  ? "doubled-pattern"
                                  : "tripled-pattern");
    j["atom_kind"] = kind;
    j["index"] = v.certificate->index;
    text << kind << " atom, index " << v.certificate->index << "\n";
  } else if (v.is_refuted() && v.witness) {
    j["split"] = Json::array({rat_to_string(v.witness->first),
                              rat_to_string(v.witness->second)});
    text << "splits as " << rat_to_string(v.witness->first) << " + "
         << rat_to_string(v.witness->second) << "\n";
  } else if (v.is_unknown()) {
    j["bound"] = v.bound;
  }
  emit(g, j, text.str());
  return kExitPass;
}

// ---------------------------------------------------------------------------
// fm

MonoidHandle handle_for(Global& g, const std::string& name) {
  if (name == "m34") return MonoidHandle::m34(g.degmax);
  if (name == "m12") return MonoidHandle::m12();
  if (name == "monoidM") return MonoidHandle::beta_monoid(g.schedule());
  throw std::invalid_argument("unknown monoid: " + name +
                              " (expected m34, m12, or monoidM)");
}

int cmd_fm_mul(Global& g, const std::string& monoid, const std::string& ftext,
               const std::string& gtext) {
  MonoidHandle h = handle_for(g, monoid);
  MExpr f = parse_mexpr(ftext, h);
  MExpr gg = parse_mexpr(gtext, h);
  MExpr product = mul(f, gg);
  Json j = envelope("fm-product");
  j["monoid"] = h.name();
  j["product"] = mexpr_to_json(product);
  j["text"] = product.to_string();
  emit(g, j, product.to_string() + "\n");
  return kExitPass;
}

int cmd_fm_divide(Global& g, const std::string& monoid,
                  const std::string& ftext, const std::string& gtext,
                  unsigned long steps) {
  MonoidHandle h = handle_for(g, monoid);
  MExpr f = parse_mexpr(ftext, h);
  MExpr gg = parse_mexpr(gtext, h);
  Verdict<MExpr> v = divides_fm(f, gg, steps);
  Json j = envelope("fm-division");
  j["monoid"] = h.name();
  j["verdict"] = verdict_word(v.outcome);
  std::ostringstream text;
  text << verdict_word(v.outcome) << "\n";
  if (v.is_proved()) {
    j["quotient"] = mexpr_to_json(*v.certificate);
    j["text"] = v.certificate->to_string();
    text << "quotient: " << v.certificate->to_string() << "\n";
  }
  if (v.is_unknown()) j["bound"] = v.bound;
  emit(g, j, text.str());
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(Global& g, const std::string& suite, unsigned long samples) {
  SuiteOptions opts;
  opts.seed = g.seed;
  opts.samples = samples;
  opts.deg_max = g.degmax;
  opts.depth = static_cast<unsigned>(g.depth);
  const PrimeSchedule& sched = g.schedule();
  opts.schedule = &sched;
  SuiteReport rep = run_suite(suite, opts);
  if (g.json) {
    std::cout << suite_report_to_json(rep).dump() << "\n";
  } else {
    std::ostringstream text;
    text << "suite: " << rep.suite << "  seed: " << rep.seed
         << "  schedule: " << rep.schedule_fingerprint << "\n";
    for (const SuiteCheck& c : rep.checks) {
      text << "  [" << check_status_name(c.status) << "] " << c.tag << " ("
           << c.instance << ")";
      if (!c.detail.empty()) text << " -- " << c.detail;
      text << "\n";
    }
    text << (rep.passed() ? "PASS" : "FAIL") << " (" << rep.checks.size()
         << " checks, " << rep.failures() << " failures)\n";
    std::cout << text.str();
  }
  return rep.passed() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  Global g;
  CLI::App app{"Exact algebra toolkit for monoid-graded polynomial rings"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all subcommand help");
  app.add_flag("--json", g.json, "Emit single-line JSON (schema v1)");
  app.add_option("--seed", g.seed, "Seed for randomized suites");
  app.add_option("--schedule", g.schedule_path,
                 "Load the prime schedule from a JSON file");
  app.add_option("--degmax", g.degmax,
                 "Digit-search depth for ratio-monoid membership");
  app.add_option("--depth", g.depth,
                 "Depth for traces, trees, goodness, and stability scans");

  // factor
  std::string factor_expr;
  CLI::App* factor = app.add_subcommand(
      "factor", "Factor an integer polynomial into irreducibles");
  factor->add_option("expr", factor_expr, "Polynomial, e.g. \"x^4 + 4\"")
      ->required();

  // split-seq
  std::string seq_expr;
  bool seq_anti = false;
  CLI::App* seq = app.add_subcommand(
      "split-seq", "Lift-or-split trace of an irreducible polynomial");
  seq->add_option("expr", seq_expr, "Irreducible polynomial")->required();
  seq->add_flag("--anti-lex", seq_anti, "Choose split factors anti-lex");

  // good
  std::string good_expr;
  CLI::App* good = app.add_subcommand(
      "good", "Two-adic goodness level of a polynomial (up to --depth)");
  good->add_option("expr", good_expr, "Polynomial")->required();

  // atomic-qm12
  std::string atomic_expr;
  CLI::App* atomic = app.add_subcommand(
      "atomic-qm12", "Atomicity of a dyadic-exponent expression");
  atomic->add_option("expr", atomic_expr,
                     "Expression, e.g. \"x^(1/2) - 1\"")
      ->required();

  // split-tree
  std::string tree_expr;
  CLI::App* tree = app.add_subcommand(
      "split-tree", "Recursive splitting tree of a dyadic expression");
  tree->add_option("expr", tree_expr, "Expression")->required();

  // mr
  CLI::App* mr = app.add_subcommand("mr", "Ratio-3/4 exponent monoid");
  mr->require_subcommand(1);
  std::string mr_q;
  CLI::App* mr_member =
      mr->add_subcommand("member", "Digit-search membership of a rational");
  mr_member->add_option("q", mr_q, "Nonnegative rational, e.g. 21/16")
      ->required();
  unsigned long mr_count = 50;
  CLI::App* mr_chain = mr->add_subcommand(
      "chain", "Strictly descending member chain with power differences");
  mr_chain->add_option("--count", mr_count, "Number of steps");
  unsigned long mr_nmax = 12;
  CLI::App* mr_atoms =
      mr->add_subcommand("atoms", "Atom list (3/4)^0 .. (3/4)^n");
  mr_atoms->add_option("--n", mr_nmax, "Largest power index");
  std::string mr_accp_q;
  CLI::App* mr_accp = mr->add_subcommand(
      "accp", "Chain stability certificate for one element");
  mr_accp->add_option("q", mr_accp_q, "Nonnegative rational")->required();

  // monoid-m
  CLI::App* mm = app.add_subcommand(
      "monoid-m", "Near-unit monoid over the prime schedule");
  mm->require_subcommand(1);
  unsigned long mm_count = 0;
  std::string mm_save;
  CLI::App* mm_sched = mm->add_subcommand(
      "schedule", "Show (or generate with --count) the prime ladder");
  mm_sched->add_option("--count", mm_count,
                       "Generate this many rungs instead of loading");
  mm_sched->add_option("--save", mm_save, "Write the ladder to a JSON file");
  std::string mm_q;
  CLI::App* mm_dec = mm->add_subcommand(
      "decompose", "Canonical form over the ambient monoid");
  mm_dec->add_option("q", mm_q, "Nonnegative rational")->required();
  std::string mm_mq;
  CLI::App* mm_member =
      mm->add_subcommand("member", "Certified membership in the monoid");
  mm_member->add_option("q", mm_mq, "Nonnegative rational")->required();
  std::string mm_b;
  long mm_n = 0;
  bool mm_inf = false;
  CLI::App* mm_ind = mm->add_subcommand(
      "indicator", "Per-rung or near-unit-count indicator");
  mm_ind->add_option("b", mm_b, "Rational combination over the ladder")
      ->required();
  mm_ind->add_option("--n", mm_n, "Rung for the per-rung indicator");
  mm_ind->add_flag("--inf", mm_inf, "Count near-unit parts instead");
  unsigned long mm_chain_count = 0;
  CLI::App* mm_chain = mm->add_subcommand(
      "chain", "Strictly ascending chain of principal ideals");
  mm_chain->add_option("--count", mm_chain_count,
                       "Steps (default: schedule size)");
  std::string mm_aq;
  CLI::App* mm_atom = mm->add_subcommand("atom", "Atom test inside the monoid");
  mm_atom->add_option("q", mm_aq, "Certified member")->required();

  // fm
  CLI::App* fm = app.add_subcommand(
      "fm", "Polynomial expressions with monoid-certified exponents");
  fm->require_subcommand(1);
  std::string fm_monoid = "m34", fm_f, fm_g;
  CLI::App* fm_mul = fm->add_subcommand("mul", "Exact product");
  fm_mul->add_option("--monoid", fm_monoid, "m34, m12, or monoidM");
  fm_mul->add_option("f", fm_f, "Left factor")->required();
  fm_mul->add_option("g", fm_g, "Right factor")->required();
  std::string fmd_monoid = "m34", fmd_f, fmd_g;
  unsigned long fmd_steps = 4096;
  CLI::App* fm_div = fm->add_subcommand(
      "divide", "Does f divide g? On success prints the quotient");
  fm_div->add_option("--monoid", fmd_monoid, "m34, m12, or monoidM");
  fm_div->add_option("--steps", fmd_steps, "Greedy-division step budget");
  fm_div->add_option("f", fmd_f, "Divisor")->required();
  fm_div->add_option("g", fmd_g, "Dividend")->required();
  std::string fmv_suite;
  unsigned long fmv_samples = 0;
  CLI::App* fm_verify =
      fm->add_subcommand("verify", "Run a registered law suite");
  fm_verify->add_option("--suite", fmv_suite, "Suite name")->required();
  fm_verify->add_option("--samples", fmv_samples,
                        "Random samples per check (0 = defaults)");

  // verify
  std::string v_suite;
  unsigned long v_samples = 0;
  bool v_list = false;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run a registered law-verification suite");
  verify->add_option("--suite", v_suite, "Suite name");
  verify->add_option("--samples", v_samples,
                     "Random samples per check (0 = defaults)");
  verify->add_flag("--list", v_list, "List registered suites and tags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (factor->parsed()) return cmd_factor(g, factor_expr);
    if (seq->parsed()) return cmd_split_seq(g, seq_expr, seq_anti);
    if (good->parsed()) return cmd_good(g, good_expr);
    if (atomic->parsed()) return cmd_atomic(g, atomic_expr);
    if (tree->parsed()) return cmd_split_tree(g, tree_expr);
    if (mr->parsed()) {
      if (mr_member->parsed()) return cmd_mr_member(g, mr_q);
      if (mr_chain->parsed()) return cmd_mr_chain(g, mr_count);
      if (mr_atoms->parsed()) return cmd_mr_atoms(g, mr_nmax);
      if (mr_accp->parsed()) return cmd_mr_accp(g, mr_accp_q);
    }
    if (mm->parsed()) {
      if (mm_sched->parsed()) return cmd_m_schedule(g, mm_count, mm_save);
      if (mm_dec->parsed()) return cmd_m_decompose(g, mm_q);
      if (mm_member->parsed()) return cmd_m_member(g, mm_mq);
      if (mm_ind->parsed()) return cmd_m_indicator(g, mm_b, mm_n, mm_inf);
      if (mm_chain->parsed()) return cmd_m_chain(g, mm_chain_count);
      if (mm_atom->parsed()) return cmd_m_atom(g, mm_aq);
    }
    if (fm->parsed()) {
      if (fm_mul->parsed()) return cmd_fm_mul(g, fm_monoid, fm_f, fm_g);
      if (fm_div->parsed())
        return cmd_fm_divide(g, fmd_monoid, fmd_f, fmd_g, fmd_steps);
      if (fm_verify->parsed()) return cmd_verify(g, fmv_suite, fmv_samples);
    }
    if (verify->parsed()) {
      if (v_list) {
        Json j = envelope("suites");
        Json arr = Json::array();
        std::ostringstream text;
        for (const std::string& name : suite_names()) {
          Json item = Json::object();
          item["name"] = name;
          Json tags = Json::array();
          text << name << ":";
          for (const std::string& tag : suite_tags(name)) {
            tags.push_back(tag);
            text << " " << tag;
          }
          text << "\n";
          item["tags"] = std::move(tags);
          arr.push_back(std::move(item));
        }
        j["suites"] = std::move(arr);
        emit(g, j, text.str());
        return kExitPass;
      }
      if (v_suite.empty())
        throw std::invalid_argument("verify: provide --suite or --list");
      return cmd_verify(g, v_suite, v_samples);
    }
    throw std::invalid_argument("no subcommand selected");
  } catch (const ParseError& e) {
    if (g.json) {
      Json j = envelope("error");
      j["message"] = e.what();
      j["position"] = e.position();
      std::cerr << j.dump() << "\n";
    } else {
      std::cerr << "error: " << e.what() << " (position " << e.position()
                << ")\n";
    }
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    if (g.json) {
      Json j = envelope("error");
      j["message"] = e.what();
      std::cerr << j.dump() << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kExitUsage;
  } catch (const std::exception& e) {
    if (g.json) {
      Json j = envelope("error");
      j["message"] = e.what();
      std::cerr << j.dump() << "\n";
    } else {
      std::cerr << "internal error: " << e.what() << "\n";
    }
    return kExitInternal;
  }
}
