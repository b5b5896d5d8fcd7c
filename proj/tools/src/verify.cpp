#include <cmath>

#include "cli.hpp"
#include "gca/debruijn.hpp"
#include "gca/decide.hpp"
#include "gca/error.hpp"
#include "gca/io.hpp"
#include "gca/laurent.hpp"
#include "gca/linear.hpp"
#include "gca/simulate.hpp"

namespace gca::cli {

using nlohmann::json;

namespace {

struct Checks {
  json items = json::array();
  bool ok = true;

  void add(const std::string& what, bool pass, const std::string& detail = {}) {
    json j{{"check", what}, {"ok", pass}};
    if (!detail.empty()) j["detail"] = detail;
    items.push_back(std::move(j));
    ok = ok && pass;
  }
};

// c != e^Z and F(c) = e^Z.
bool kernel_witness_holds(const Gca& f, const json& w) {
  Configuration c = config_from_json(f.group(), w);
  return !c.is_identity() && apply(f, c).is_identity();
}

// No window of length |word| + 2r maps onto `word`; exhaustive when small.
bool orphan_holds(const Gca& f, const std::vector<Elem>& word) {
  const std::size_t n = f.group().order();
  const std::size_t span = 2 * static_cast<std::size_t>(f.radius()) + 1;
  const std::size_t len = word.size() + span - 1;
  const double count = std::pow(static_cast<double>(n), static_cast<double>(len));
  if (count > double(1 << 22)) return is_orphan(f, word);
  std::vector<Elem> w(len, 0);
  for (;;) {
    bool hits = true;
    for (std::size_t i = 0; i < word.size() && hits; ++i)
      hits = f.apply_window(std::span<const Elem>(w.data() + i, span)) == word[i];
    if (hits) return false;
    std::size_t i = len;
    while (i > 0 && ++w[i - 1] == n) w[--i] = 0;
    if (i == 0) return true;
  }
}

LaurentMatrix matrix_of(const json& ev) {
  return LaurentMatrix::parse(ev.at("matrix").get<std::vector<std::vector<std::string>>>(),
                              ev.at("prime").get<std::uint32_t>());
}

Gca gca_of(const LaurentMatrix& m) {
  std::vector<FiniteGroup> factors(m.dim(), FiniteGroup::cyclic(m.prime()));
  return to_gca(m.dim() == 1 ? factors[0] : FiniteGroup::product(factors), m);
}

void verify_injectivity(const Gca& f, const json& v, Checks& out) {
  const json& ev = v.at("evidence");
  const std::string answer = v.at("answer");
  if (answer == "NO" && ev.contains("witness")) {
    out.add("kernel witness maps to e", kernel_witness_holds(f, ev.at("witness")));
    return;
  }
  if (ev.value("method", std::string()) == "determinant") {
    auto d = det(linearize(f));
    out.add("determinant recomputed", d.to_string() == ev.at("det"));
  }
  Verdict again = is_injective(f);
  out.add("injectivity re-derived", std::string(to_string(again.answer)) == answer);
}

void verify_surjectivity(const Gca& f, const json& v, Checks& out) {
  const json& ev = v.at("evidence");
  const std::string answer = v.at("answer");
  if (answer == "NO" && ev.contains("orphan")) {
    out.add("orphan word has no preimage", orphan_holds(f, ev.at("orphan").get<std::vector<Elem>>()));
    return;
  }
  if (answer == "NO" && ev.contains("witness")) {
    out.add("finite kernel witness maps to e", kernel_witness_holds(f, ev.at("witness")));
    return;
  }
  Verdict again = is_surjective(f);
  out.add("surjectivity re-derived", std::string(to_string(again.answer)) == answer);
}

// A positive-expansivity verdict of the linear ladder on `m`.
void verify_pos_exp(const LaurentMatrix& m, const json& v, int horizon, const std::string& label, Checks& out) {
  const std::string answer = v.at("answer");
  const json& ev = v.at("evidence");
  if (answer == "NO") {
    const std::string kind = ev.value("witness", std::string());
    out.add(label + ": " + kind + " witness re-run for " + std::to_string(horizon) + " steps",
            recheck_witness(m, kind, ev, horizon, false));
  } else if (answer == "YES") {
    auto o = front_escape_oracle(gca_of(m), 6, horizon, OracleMode::Positive);
    out.add(label + ": front sweep finds no trapped germ", o.outcome != OracleOutcome::Refuted,
            to_string(o.outcome));
  }
}

void verify_report(const Gca& f, const json& doc, int horizon, Checks& out) {
  const json& rep = doc.at("report");
  const bool exp = rep.at("property") == "expansivity";
  const json& leaves = rep.at("leaves");
  if (exp && rep.value("reason", std::string()) == "NotInjective") {
    const json& inj = rep.at("evidence").at("injectivity");
    verify_injectivity(f, inj, out);
    return;
  }
  bool any_no = false, all_yes = true;
  for (const auto& leaf : leaves) {
    const std::string path = leaf.at("path");
    const std::string answer = leaf.at("verdict");
    any_no = any_no || answer == "NO";
    all_yes = all_yes && answer == "YES";
    const json& ev = leaf.at("evidence");
    if (ev.contains("matrix")) {
      LaurentMatrix m = matrix_of(ev);
      if (!exp) {
        Verdict t = lin_is_transitive(m);
        out.add(path + ": transitivity gcd recomputed",
                std::string(to_string(t.answer)) == answer && t.evidence.value("gcd", json()) == ev.value("gcd", json()));
        continue;
      }
      if (leaf.value("reason", std::string()) == "NotInjective") {
        out.add(path + ": determinant is not a monomial", !det(m).as_monomial().has_value());
        continue;
      }
      LaurentMatrix h = m - lin_invert(m);
      out.add(path + ": H = F - F^-1 recomputed", h.to_strings() == ev.at("H").get<std::vector<std::vector<std::string>>>());
      verify_pos_exp(h, ev.at("positiveExpansivityOfH"), horizon, path, out);
      if (answer == "YES") {
        auto o = front_escape_oracle(gca_of(m), 6, horizon, OracleMode::Expansive);
        out.add(path + ": two-sided front sweep finds no trapped germ", o.outcome != OracleOutcome::Refuted,
                to_string(o.outcome));
      }
    } else if (ev.contains("blocks") && leaves.size() == 1) {
      // The root is the leaf, so the claimed shift power can be replayed.
      const json& blocks = ev.at("blocks");
      if (blocks.size() == 1 && blocks[0].contains("shiftPower")) {
        const int k = blocks[0]["shiftPower"].at("K"), e = blocks[0]["shiftPower"].at("exponent");
        auto s = power(f, k).pure_shift_offset();
        out.add(path + ": F^" + std::to_string(k) + " is the claimed shift", e == 0 ? power(f, k) == Gca::identity(f.group())
                                                                                 : s && *s == e);
      }
    }
  }
  const std::string combined = any_no ? "NO" : all_yes ? "YES" : "UNKNOWN";
  out.add("combined verdict follows from the leaves", combined == rep.at("combined"));
}

}  // namespace

json verify_evidence(const json& doc, int horizon) {
  Checks out;
  const Gca f = rule_from_json(doc.at("rule"));
  const std::string property = doc.at("property");
  const json& v = doc.at("verdict");
  if (property == "injectivity") {
    verify_injectivity(f, v, out);
  } else if (property == "surjectivity") {
    verify_surjectivity(f, v, out);
  } else if (property == "positive-expansivity") {
    const json& ev = v.at("evidence");
    if (ev.contains("matrix")) {
      verify_pos_exp(matrix_of(ev), v, horizon, "root", out);
    } else if (v.at("answer") == "NO") {
      const std::string w = ev.value("witness", std::string());
      if (w == "injective") out.add("rule is injective", is_injective(f).answer == Answer::Yes);
      if (w == "notSurjective") verify_surjectivity(f, ev.at("surjectivity"), out);
    }
  } else if (property == "expansivity" || property == "transitivity") {
    verify_report(f, doc, horizon, out);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown property '" + property + "'");
  }
  if (out.items.empty()) out.add("nothing to re-check for an UNKNOWN verdict", v.at("answer") == "UNKNOWN");
  return {{"property", property}, {"answer", v.at("answer")}, {"ok", out.ok}, {"checks", out.items}};
}

}  // namespace gca::cli
