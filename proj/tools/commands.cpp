#include "commands.hpp"

#include <algorithm>
#include <sstream>

#include "canonica/classification.hpp"
#include "canonica/parser.hpp"
#include "canonica/settings.hpp"

namespace canonica::cli {

namespace {

using nlohmann::json;

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string list_text(const std::vector<int>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

json to_json(const SemidualizingReport& r) {
  return {{"module_fingerprint", hex64(r.module_fingerprint)},
          {"homothety", to_string(r.homothety)},
          {"ext_checked_to", r.ext_checked_to},
          {"first_nonvanishing_ext", optional_json(r.first_nonvanishing_ext)},
          {"verdict", to_string(r.verdict)}};
}

json to_json(const ClassificationReport& r) {
  json cands = json::array();
  for (const auto& c : r.candidates)
    cands.push_back({{"label", c.label},
                     {"class", optional_json(c.class_label)},
                     {"beta0", c.beta0},
                     {"hilbert", c.hilbert.to_string()},
                     {"multiplicity", c.multiplicity},
                     {"semidualizing", to_json(c.report)}});
  return {{"ring", r.ring},
          {"scan_bound", r.scan_bound},
          {"ext_bound", r.ext_bound},
          {"predicted_classes", r.predicted_classes},
          {"found_classes", r.found_classes},
          {"predicted_cardinality", r.predicted_cardinality},
          {"found_cardinality", r.found_cardinality},
          {"upper_bound", r.upper_bound},
          {"candidates", cands},
          {"notes", r.notes},
          {"verdict", to_string(r.verdict)}};
}

json to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"suite", r.suite}, {"checks", checks}, {"notes", r.notes}, {"passed", r.passed()}};
}

/// Everything a command needs about the ring, built once.
template <class K>
struct Built {
  QRingPtr<K> ring;
  std::optional<DetRing<K>> det;
  std::optional<Chain<K>> chain;
};

template <class K>
Built<K> build_ring(const K& field, const RingSpec& spec) {
  Built<K> b;
  switch (spec.kind) {
    case RingSpec::Kind::Determinantal:
      b.det = build_det_ring(field, spec.m, spec.n, spec.r);
      b.ring = b.det->ring;
      break;
    case RingSpec::Kind::Chain:
      b.chain = build_chain(field, spec.chain);
      b.ring = b.chain->ring();
      break;
    case RingSpec::Kind::Polynomial: {
      if (static_cast<int>(spec.vars.size()) > kMaxVars)
        throw ParameterError("at most " + std::to_string(kMaxVars) + " variables are supported");
      for (std::size_t i = 0; i < spec.vars.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
          if (spec.vars[i] == spec.vars[j]) throw SchemaError("duplicate variable " + spec.vars[i]);
      auto S = std::make_shared<PolyRing<K>>(field, spec.vars);
      PolyVec<K> rels;
      for (const auto& t : spec.relations) {
        auto f = parse_polynomial(t, *S);
        if (!f.is_homogeneous()) throw ParameterError("relation is not homogeneous: " + t);
        rels.push_back(std::move(f));
      }
      b.ring = std::make_shared<QuotientRing<K>>(S, rels, spec.construction());
      break;
    }
  }
  return b;
}

template <class K>
bool is_gorenstein(const QRingPtr<K>& R) {
  auto d = ring_depth(R);
  if (!d || *d != R->dim()) return false;
  return ext_beta0(R->dim(), FPModule<K>::residue_field(R), FPModule<K>::free(R, {0})) == 1;
}

template <class K>
Outcome cmd_build(const Built<K>& b, const RingSpec& spec, std::ostream& out) {
  const auto& R = b.ring;
  const HilbertSeries H = hilbert_series_by_leading_terms(FPModule<K>::free(R, {0}));
  const bool gorenstein = b.det ? b.det->gorenstein : is_gorenstein(R);
  const int dim = R->dim();
  const int grade = b.det ? b.det->grade : R->nvars() - dim;
  const bool artinian = dim == 0;
  json payload{{"ring", spec.construction()},
               {"field", spec.field_name()},
               {"nvars", R->nvars()},
               {"dim", dim},
               {"grade", grade},
               {"gb_size", R->gb().size()},
               {"gorenstein", gorenstein},
               {"hilbert", H.to_string()},
               {"local_artinian", artinian},
               {"length", artinian ? json(H.multiplicity()) : json(nullptr)},
               {"predicted_cardinality", nullptr}};
  out << spec.construction() << " over " << spec.field_name() << "\n";
  out << "dim=" << dim << " grade=" << grade << " gorenstein=" << (gorenstein ? "true" : "false")
      << " hilbert=" << H.to_string() << "\n";
  if (b.chain || artinian) {
    out << "length=";
    if (artinian)
      out << H.multiplicity();
    else
      out << "infinite";
    out << " local-artinian=" << (artinian ? "true" : "false") << "\n";
  }
  std::optional<int> predicted;
  if (b.det) {
    predicted = b.det->gorenstein ? 1 : 2;
    payload["transposed"] = b.det->transposed;
    payload["degenerate"] = b.det->degenerate;
    if (b.det->degenerate) out << "r=0: the ring is the base field\n";
    if (b.det->transposed) out << "note: shape transposed to m >= n\n";
  }
  if (b.chain) predicted = b.chain->predicted_cardinality;
  out << "gb_size=" << R->gb().size();
  if (predicted) {
    out << " predicted_cardinality=" << *predicted;
    payload["predicted_cardinality"] = *predicted;
  }
  out << "\n";
  std::ostringstream summary;
  summary << "dim=" << dim << " gorenstein=" << (gorenstein ? "true" : "false") << " hilbert=" << H.to_string();
  return {kPass, {{"payload", payload}, {"summary", summary.str()}}};
}

int exit_for(ClassVerdict v) {
  switch (v) {
    case ClassVerdict::MatchesTheorem: return kPass;
    case ClassVerdict::Mismatch: return kMismatch;
    case ClassVerdict::Partial: return kPartial;
  }
  return kMismatch;
}

template <class K>
Outcome cmd_classify(const Built<K>& b, const Options& opt, std::ostream& out) {
  ClassificationReport rep;
  const int ext_bound = opt.ext_bound.value_or(-1);
  if (b.det) {
    const int scan = opt.scan.value_or(std::max(4, 2 * std::abs(b.det->m - b.det->n)));
    rep = enumerate_semidualizing_det(*b.det, scan, ext_bound, opt.threads);
  } else if (b.chain) {
    rep = verify_chain_cardinality(*b.chain, ext_bound, opt.threads);
  } else {
    throw Inapplicable("classify needs a determinantal ring or a chain");
  }
  out << "classify " << rep.ring << ": scan " << rep.scan_bound << ", ext bound " << rep.ext_bound << "\n";
  for (const auto& c : rep.candidates) {
    out << "  " << c.label << "  " << to_string(c.report.verdict);
    if (c.report.homothety != Homothety::Iso) out << "  homothety " << to_string(c.report.homothety);
    if (c.report.first_nonvanishing_ext) out << "  witness Ext^" << *c.report.first_nonvanishing_ext;
    out << "  beta0=" << c.beta0 << "\n";
  }
  for (const auto& n : rep.notes) out << "note: " << n << "\n";
  std::ostringstream summary;
  summary << to_string(rep.verdict);
  if (b.det)
    summary << " classes=" << list_text(rep.found_classes) << " predicted=" << list_text(rep.predicted_classes);
  else
    summary << " classes=" << rep.found_cardinality << " predicted=" << rep.predicted_cardinality
            << " upper_bound=" << rep.upper_bound;
  out << summary.str() << "\n";
  return {exit_for(rep.verdict), {{"payload", to_json(rep)}, {"summary", summary.str()}}};
}

template <class K>
Outcome cmd_verify(const Built<K>& b, const Options& opt, std::ostream& out) {
  SuiteReport rep;
  const int ext_bound = opt.ext_bound.value_or(-1);
  if (b.det) {
    const int scan = opt.scan.value_or(std::max(4, 2 * std::abs(b.det->m - b.det->n)));
    rep = run_det_suite(opt.suite, *b.det, scan, ext_bound);
  } else if (b.chain) {
    rep = run_chain_suite(opt.suite, *b.chain, ext_bound);
  } else {
    throw Inapplicable("suite " + opt.suite + " needs a determinantal ring or a chain");
  }
  for (const auto& c : rep.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
  }
  for (const auto& n : rep.notes) out << "note: " << n << "\n";
  const std::string summary = std::string(rep.passed() ? "PASS" : "FAIL") + " suite " + opt.suite;
  out << summary << "\n";
  return {rep.passed() ? kPass : kMismatch, {{"payload", to_json(rep)}, {"summary", summary}}};
}

template <class K>
Outcome dispatch(const K& field, const RingSpec& spec, const Options& opt, std::ostream& out) {
  Built<K> b = build_ring(field, spec);
  if (opt.command == "build") return cmd_build(b, spec, out);
  if (opt.command == "classify") return cmd_classify(b, opt, out);
  return cmd_verify(b, opt, out);
}

}  // namespace

Outcome run_command(const Options& opt, std::ostream& out, std::ostream& err) {
  try {
    if (opt.command != "build" && opt.command != "classify" && opt.command != "verify")
      throw SchemaError("unknown command " + opt.command);
    if (opt.command == "verify" &&
        std::find(suite_names().begin(), suite_names().end(), opt.suite) == suite_names().end())
      throw SchemaError("unknown suite '" + opt.suite + "'");
    if (opt.scan && *opt.scan < 0) throw ParameterError("--scan must be nonnegative");
    if (opt.ext_bound && *opt.ext_bound < 1) throw ParameterError("--ext-bound must be positive");
    if (opt.threads < 1) throw ParameterError("--threads must be positive");
    RingSpec spec = load_spec(opt.spec);
    if (opt.field_p) spec.p = *opt.field_p;
    g_verify_gb.store(opt.verify_gb);

    Outcome o;
    if (spec.p == 0) {
      o = dispatch(RationalField(), spec, opt, out);
    } else {
      std::optional<PrimeField> F;
      try {
        F.emplace(spec.p);
      } catch (const AlgebraError& e) {
        throw ParameterError(e.what());
      }
      o = dispatch(*F, spec, opt, out);
    }
    json options{{"scan", optional_json(opt.scan)},
                 {"ext_bound", optional_json(opt.ext_bound)},
                 {"suite", opt.command == "verify" ? json(opt.suite) : json(nullptr)},
                 {"verify_gb", opt.verify_gb}};
    json envelope{{"schema_version", kSchemaVersion},
                  {"tool", {{"name", "canonica"}, {"version", kToolVersion}}},
                  {"command", opt.command},
                  {"spec", {{"construction", spec.construction()}, {"field", spec.field_name()},
                            {"fingerprint", spec.fingerprint()}}},
                  {"options", options},
                  {"exit_code", o.exit_code},
                  {"payload", o.report["payload"]},
                  {"summary", o.report["summary"]}};
    o.report = std::move(envelope);
    return o;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return {kSchemaError, nullptr};
  } catch (const ParseError& e) {
    err << "schema error: " << e.what() << "\n";
    return {kSchemaError, nullptr};
  } catch (const Inapplicable& e) {
    err << "inapplicable: " << e.what() << "\n";
    return {kInapplicable, nullptr};
  } catch (const ParameterError& e) {
    err << "parameter violation: " << e.what() << "\n";
    return {kParameterViolation, nullptr};
  } catch (const RegularityFailure& e) {
    err << "parameter violation: " << e.what() << "\n";
    return {kParameterViolation, nullptr};
  } catch (const ClassNotFound& e) {
    err << e.what() << "\n";
    return {kMismatch, nullptr};
  } catch (const AlgebraError& e) {
    err << "error: " << e.what() << "\n";
    return {kMismatch, nullptr};
  }
}

}  // namespace canonica::cli
