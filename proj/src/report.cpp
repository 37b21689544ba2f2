#include "subrigid/report.hpp"

#include <cstdlib>
#include <fstream>

#include "subrigid/error.hpp"
#include "subrigid/measures.hpp"
#include "subrigid/towers.hpp"

namespace subrigid {

using nlohmann::json;

json scalar_json(const Scalar& x) {
  if (x.is_exact()) return x.str();
  return x.to_double();
}

json certificate_json(const Certificate& c) {
  return {{"kind", c.kind}, {"bound", scalar_json(c.bound)}, {"witness", c.witness}, {"sequence", c.sequence}};
}

json rate_report_json(const RateReport& r) {
  json out;
  out["delta_lower"] = scalar_json(r.lower);
  out["delta_upper"] = r.upper ? scalar_json(*r.upper) : json(nullptr);
  out["exact"] = r.exact;
  out["witness_length"] = r.witness_length ? json(*r.witness_length) : json(nullptr);
  out["witness_key"] = r.witness_key ? json(r.witness_key->get_str()) : json(nullptr);
  out["sequence"] = r.partial_rigidity_sequence;
  out["upper_method"] = r.upper_method;
  out["certificates"] = json::array();
  for (const auto& c : r.certificates) out["certificates"].push_back(certificate_json(c));
  out["profile"] = json::array();
  for (const auto& [m, a] : r.profile) out["profile"].push_back({{"m", m}, {"a_m", scalar_json(a)}});
  return out;
}

json construction_json(const RateConstruction& c) {
  json out;
  out["target"] = rational_str(c.target);
  out["eps"] = rational_str(c.eps);
  out["exact_hit"] = c.exact_hit;
  out["converged"] = c.converged;
  out["factors"] = json::array();
  for (const auto& f : c.factors) {
    json ell_param = f.ell.fits_slong_p() ? json(f.ell.get_si()) : json(f.ell.get_str());
    out["factors"].push_back({{"ell", f.ell.get_str()},
                              {"q", f.q},
                              {"m", f.m},
                              {"ratio", rational_str(f.ratio)},
                              {"delta_k", rational_str(f.delta_k)},
                              {"delta_k_decimal", f.delta_k.get_d()},
                              {"bracket_ok", f.bracket_ok},
                              {"substitution", {{"family", "zeta"}, {"params", {{"l", ell_param}}}}},
                              {"sequence", f.ell.get_str() + "^k"}});
  }
  if (!c.factors.empty()) {
    out["final_delta"] = rational_str(c.factors.back().delta_k);
    out["gap_decimal"] = Rational(c.factors.back().delta_k - c.target).get_d();
  }
  return out;
}

namespace {

std::size_t resolve_max_m(const RunOptions& opts, std::size_t ell) {
  if (opts.max_m) return opts.max_m;
  if (const char* env = std::getenv("SUBRIGID_MAX_M")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 2) return v;
    throw InvalidInput("SUBRIGID_MAX_M must be an integer >= 2");
  }
  return default_max_m(ell);
}

json profile_json(const MorphismProfile& p) {
  return {{"constant_length", p.constant_length ? json(*p.constant_length) : json(nullptr)},
          {"proper", p.proper},
          {"positive", p.positive},
          {"primitive", p.primitive},
          {"max_consecutivity", p.max_consecutivity},
          {"norm", p.norm},
          {"min_image_length", p.min_image_length}};
}

json words_json(const Alphabet& alpha, const std::set<Word>& ws) {
  json out = json::array();
  for (const auto& w : ws) out.push_back(alpha.format(w));
  return out;
}

Morphism single(const SubstitutionSpec& spec, const char* command) {
  if (is_directive(spec)) {
    DirectiveSequence seq = to_directive(spec);
    if (seq.prefix_length() == 0) return seq.level_substitution(0);
    throw InvalidInput(std::string(command) + " needs a substitution or a directive sequence without prefix");
  }
  return to_morphism(spec);
}

json analyze_substitution(const Morphism& sigma, std::ostream& summary) {
  json out;
  const Alphabet& alpha = sigma.source();
  MorphismProfile prof = classify(sigma);
  out["kind"] = "substitution";
  out["morphism"] = sigma.describe();
  out["profile"] = profile_json(prof);
  auto m = sigma.incidence();
  json inc = json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    inc.push_back(row);
  }
  out["incidence"] = inc;
  if (!prof.primitive) throw RejectedInput("substitution is not primitive");
  auto verdict = aperiodicity_check(sigma);
  out["aperiodicity"] = to_string(verdict);
  if (verdict == PeriodicityVerdict::Periodic) throw RejectedInput("substitution generates a periodic subshift");

  auto table = MeasureTable::of_substitution(sigma);
  out["mode"] = to_string(table->mode());
  out["lambda"] = scalar_json(table->lambda());
  out["working_exponent"] = table->working_exponent();
  if (!table->warning().empty()) out["warning"] = table->warning();
  json freq = json::object();
  auto f = table->letter_frequencies();
  for (std::size_t a = 0; a < f.size(); ++a) freq[alpha.symbol(static_cast<Letter>(a))] = scalar_json(f[a]);
  out["letter_frequencies"] = freq;
  json two = json::object();
  for (const auto& [w, v] : table->two_word_measures()) two[alpha.format(w)] = scalar_json(v);
  out["two_word_measures"] = two;

  auto lang = LanguageTable::of_substitution(sigma, 10);
  auto cp = complexity_profile(lang, 10);
  out["complexity"] = json::array();
  for (std::size_t n = 1; n <= 10; ++n)
    out["complexity"].push_back({{"n", n}, {"p", cp.p[n]}, {"q", cp.q[n]}, {"ratio", scalar_json(cp.ratio(n))}});

  json rw = json::object();
  for (std::size_t a = 0; a < alpha.size(); ++a) {
    Word u{static_cast<Letter>(a)};
    auto right = return_words(lang, u, ReturnSide::Right);
    auto left = return_words(lang, u, ReturnSide::Left);
    rw[alpha.symbol(static_cast<Letter>(a))] = {
        {"right", words_json(alpha, right.words)},
        {"left", words_json(alpha, left.words)},
        {"certified", right.certified && left.certified},
        {"boundary_bound", right.boundary_bound ? json(*right.boundary_bound) : json(nullptr)}};
  }
  out["return_words"] = rw;
  out["certificates"] = json::array();
  for (const auto& c : certificates(DirectiveSequence::constant(sigma))) out["certificates"].push_back(certificate_json(c));
  summary << "substitution " << sigma.describe() << ": primitive, " << to_string(verdict) << ", mode "
          << to_string(table->mode()) << "\n";
  return out;
}

json analyze_directive(const DirectiveSequence& seq, std::ostream& summary) {
  json out;
  out["kind"] = "directive";
  out["prefix_length"] = seq.prefix_length();
  out["period"] = seq.period();
  out["primitive"] = seq.is_primitive();
  if (!seq.is_primitive()) throw RejectedInput("directive sequence is not primitive");
  Morphism level = seq.level_substitution(seq.prefix_length());
  out["tail_composition"] = level.describe();
  out["heights"] = json::array();
  for (std::size_t n = 0; n <= seq.prefix_length() + seq.period(); ++n) {
    auto h = heights(seq, n);
    json row = json::array();
    for (const auto& x : h.h) row.push_back(x.get_str());
    out["heights"].push_back({{"level", n}, {"h", row}});
  }
  SadicMeasures measures(seq);
  auto t0 = measures.level(0);
  out["mode"] = to_string(t0->mode());
  json freq = json::object();
  auto f = t0->letter_frequencies();
  for (std::size_t a = 0; a < f.size(); ++a) freq[t0->alphabet().symbol(static_cast<Letter>(a))] = scalar_json(f[a]);
  out["letter_frequencies"] = freq;
  out["certificates"] = json::array();
  for (const auto& c : certificates(seq)) out["certificates"].push_back(certificate_json(c));
  summary << "directive sequence: prefix " << seq.prefix_length() << ", period " << seq.period() << "\n";
  return out;
}

json run_delta(const SubstitutionSpec& spec, const RunOptions& opts, std::ostream& summary) {
  json out;
  if (spec.kind == SubstitutionSpec::Kind::ThueMorseType) {
    FiniteAbelianGroup g(spec.group);
    Word u = g.alphabet().parse(spec.u);
    auto tm = tm_analysis(g, u, resolve_max_m(opts, u.size()));
    out = rate_report_json(tm.report);
    json shifts = json::object();
    for (const auto& [m, row] : tm.shifts) {
      json r = json::array();
      for (const auto& x : row) r.push_back(scalar_json(x));
      shifts[std::to_string(m)] = r;
    }
    out["shifts"] = shifts;
  } else {
    DirectiveSequence seq = to_directive(spec);
    std::optional<Morphism> sigma;
    if (seq.prefix_length() == 0) sigma = seq.level_substitution(0);
    if (sigma && sigma->constant_length()) {
      out = rate_report_json(delta_constant_length(*sigma, resolve_max_m(opts, *sigma->constant_length())));
    } else {
      // Outside the constant-length regime only the certificates bound the rate.
      if (!seq.is_primitive()) throw RejectedInput("directive sequence is not primitive");
      if (sigma && aperiodicity_check(*sigma) == PeriodicityVerdict::Periodic)
        throw RejectedInput("substitution generates a periodic subshift");
      RateReport r;
      r.certificates = certificates(seq);
      r.lower = Scalar(Rational(0));
      for (const auto& c : r.certificates)
        if (c.bound > r.lower) r.lower = c.bound;
      r.upper_method = "none";
      r.partial_rigidity_sequence = "";
      for (const auto& c : r.certificates)
        if (c.bound == r.lower) r.partial_rigidity_sequence = c.sequence;
      out = rate_report_json(r);
    }
  }
  summary << "delta in [" << out["delta_lower"].dump() << ", "
          << (out["delta_upper"].is_null() ? std::string("?") : out["delta_upper"].dump()) << "]"
          << (out["exact"].get<bool>() ? " (exact)" : "") << "\n";
  return out;
}

}  // namespace

json run_command(const SubstitutionSpec* spec, const RunOptions& opts, std::ostream& summary) {
  json out;
  out["command"] = opts.command;
  if (opts.command == "approx") {
    if (opts.delta.empty() || opts.eps.empty()) throw InvalidInput("approx needs --delta and --eps");
    Rational target = Scalar::parse_exact(opts.delta).rational();
    Rational eps = Scalar::parse_exact(opts.eps).rational();
    out["result"] = construction_json(approximate_rate(target, eps));
    summary << "approximated " << rational_str(target) << " with " << out["result"]["factors"].size()
            << " factor(s)\n";
    return out;
  }
  if (!spec) throw InvalidInput(opts.command + " needs a substitution spec");
  out["input"] = spec_to_json(*spec);

  if (opts.command == "analyze") {
    if (is_directive(*spec))
      out["result"] = analyze_directive(to_directive(*spec), summary);
    else
      out["result"] = analyze_substitution(to_morphism(*spec), summary);
  } else if (opts.command == "measure") {
    if (opts.word.empty()) throw InvalidInput("measure needs --word");
    std::shared_ptr<MeasureTable> table;
    if (is_directive(*spec)) {
      SadicMeasures measures(to_directive(*spec), opts.mode);
      table = measures.level(0);
    } else {
      table = MeasureTable::of_substitution(to_morphism(*spec), opts.mode);
    }
    Word w = table->alphabet().parse(opts.word);
    auto mv = table->measure(w);
    out["result"] = {{"word", opts.word},
                     {"measure", scalar_json(mv.value)},
                     {"in_language", mv.in_language},
                     {"mode", to_string(table->mode())}};
    summary << "mu([" << opts.word << "]) = " << mv.value.str() << (mv.in_language ? "" : " (not in language)") << "\n";
  } else if (opts.command == "delta") {
    out["result"] = run_delta(*spec, opts, summary);
  } else if (opts.command == "profile") {
    Morphism sigma = single(*spec, "profile");
    std::size_t max_m = resolve_max_m(opts, sigma.constant_length().value_or(sigma.norm()));
    auto prof = complete_mass_profile(sigma, max_m);
    json rows = json::array();
    for (const auto& [m, a] : prof) rows.push_back({{"m", m}, {"a_m", scalar_json(a)}});
    out["result"] = {{"profile", rows}};
    if (!opts.csv_path.empty()) {
      std::ofstream csv(opts.csv_path);
      if (!csv) throw Error("cannot write " + opts.csv_path);
      csv << "m,a_m,a_m_decimal\n";
      for (const auto& [m, a] : prof) csv << m << "," << a.str() << "," << a.decimal(15) << "\n";
      out["result"]["csv"] = opts.csv_path;
    }
    summary << "profile for m in [2, " << max_m << "]\n";
  } else if (opts.command == "certify") {
    json certs = json::array();
    for (const auto& c : certificates(to_directive(*spec))) certs.push_back(certificate_json(c));
    out["result"] = {{"certificates", certs}};
    summary << certs.size() << " certificate(s)\n";
  } else if (opts.command == "diagnose") {
    Morphism sigma = single(*spec, "diagnose");
    auto d = rigidity_diagnostic(sigma, opts.n);
    json ratios = json::array();
    for (std::size_t n = 1; n < d.ratios.size(); ++n) ratios.push_back({{"n", n}, {"q_over_p", scalar_json(d.ratios[n])}});
    out["result"] = {{"verdict", d.verdict},
                     {"upper", d.upper ? scalar_json(*d.upper) : json(nullptr)},
                     {"trend", d.trend},
                     {"ratios", ratios}};
    summary << "verdict: " << d.verdict << "\n";
  } else if (opts.command == "oracle") {
    if (opts.word.empty()) throw InvalidInput("oracle needs --word");
    Morphism sigma = single(*spec, "oracle");
    auto table = MeasureTable::of_substitution(sigma, opts.mode);
    Word w = sigma.source().parse(opts.word);
    unsigned depth = opts.depth ? opts.depth : depth_for_length(sigma, 1000000);
    double emp = empirical_frequency(sigma, w, depth);
    auto exact = table->measure(w);
    out["result"] = {{"word", opts.word},
                     {"depth", depth},
                     {"empirical", emp},
                     {"measure", scalar_json(exact.value)},
                     {"abs_difference", std::abs(emp - exact.value.to_double())}};
    summary << "empirical " << emp << " vs " << exact.value.str() << "\n";
  } else {
    throw InvalidInput("unknown command '" + opts.command + "'");
  }
  return out;
}

}  // namespace subrigid
