#include "colimit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "colimit/catalog.hpp"
#include "colimit/colimit.hpp"
#include "colimit/dsl.hpp"
#include "colimit/search.hpp"
#include "colimit/tensor.hpp"
#include "colimit/wu.hpp"

namespace colimit {

namespace {

using Json = nlohmann::ordered_json;

struct Settings {
  bool json = false;
  std::size_t pc_budget = kDefaultPcBudget;
  std::size_t coset_limit = kDefaultCosetLimit;
  std::size_t tensor_budget = kDefaultTensorBudget;
};

// Collected output of one verb.
struct Report {
  Json data = Json::object();
  std::ostringstream text;
  int code = kExitOk;
};

Json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(x);
  }
  return to_string(x);
}

Json invariants_json(const AbelianInvariants& a) {
  Json t = Json::array();
  for (const auto& d : a.torsion) t.push_back(integer_json(d));
  return Json{{"free_rank", a.free_rank}, {"torsion", t}, {"text", a.to_string()}};
}

std::string torsion_text(const AbelianInvariants& a) {
  if (a.torsion.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < a.torsion.size(); ++i) s += (i ? ", " : "") + to_string(a.torsion[i]);
  return s;
}

void write_invariants(Report& r, const AbelianInvariants& a) {
  r.data["invariants"] = invariants_json(a);
  r.text << "invariants: " << a.to_string() << "\n";
  r.text << "free rank: " << a.free_rank << "\n";
  r.text << "torsion: " << torsion_text(a) << "\n";
}

Json checks_json(const std::vector<HypothesisCheck>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back({{"what", c.what}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

void write_checks(Report& r, const std::vector<HypothesisCheck>& checks) {
  r.data["hypothesis_checks"] = checks_json(checks);
  for (const auto& c : checks) {
    r.text << "check: " << c.what << ": " << (c.passed ? "ok" : "FAILED");
    if (!c.detail.empty()) r.text << " (" << c.detail << ")";
    r.text << "\n";
  }
}

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    unsigned long long x = std::stoull(v, &used);
    if (used != std::string(v).size() || x == 0) throw std::invalid_argument(name);
    return static_cast<std::size_t>(x);
  } catch (const std::exception&) {
    throw InputError(std::string("environment variable ") + name + " must be a positive integer");
  }
}

// Splits at commas outside brackets and parentheses.
std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string read_text(const std::string& spec) {
  std::string path = spec.starts_with("@") ? spec.substr(1) : spec;
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---- group inputs ----

bool is_free_spec(const std::string& s) { return s.starts_with("free:"); }

CatalogGroup finite_group(const std::string& spec, const Settings& st) {
  if (spec.starts_with("catalog:")) return catalog(spec.substr(8));
  std::string text = spec;
  if (spec.starts_with("@") || (spec.find(':') == std::string::npos && std::filesystem::exists(spec))) {
    text = read_text(spec);
  }
  CatalogGroup g;
  g.name = "presented";
  g.presentation = parse_presentation(text);
  g.group = realize(g.presentation, st.coset_limit);
  return g;
}

struct FreeInput {
  PcGroupPtr group;
  Alphabet alphabet;
};

Alphabet free_alphabet(int rank) {
  if (rank == 2) return Alphabet({"x", "y"});
  if (rank == 3) return Alphabet({"x", "y", "z"});
  return Alphabet::indexed("x", rank);
}

FreeInput free_group(const std::string& spec, const std::string& gens, const Settings& st) {
  // free:<rank>:<class>
  auto rest = spec.substr(5);
  auto colon = rest.find(':');
  if (colon == std::string::npos) throw InputError("expected free:<rank>:<class>");
  int rank = 0, cls = 0;
  try {
    rank = std::stoi(rest.substr(0, colon));
    cls = std::stoi(rest.substr(colon + 1));
  } catch (const std::exception&) {
    throw InputError("expected free:<rank>:<class>");
  }
  FreeInput f;
  f.group = PcGroup::free_nilpotent(rank, cls, st.pc_budget);
  f.alphabet = gens.empty() ? free_alphabet(rank) : Alphabet(split_top(gens));
  if (f.alphabet.size() != rank) throw InputError("--gens must list " + std::to_string(rank) + " names");
  return f;
}

PcSubgroup pc_subgroup(const FreeInput& f, const std::string& spec) {
  if (spec == "G") return whole_group(f.group);
  if (spec == "1") return trivial_subgroup(f.group);
  if (spec.starts_with("ncl(") && spec.ends_with(")")) {
    std::vector<PcElement> gens;
    std::string body = spec.substr(4, spec.size() - 5);
    std::stringstream ss(body);
    std::string w;
    while (std::getline(ss, w, ';')) gens.push_back(f.group->collect(parse_word(w, f.alphabet)));
    return normal_closure_pc(f.group, gens);
  }
  throw InputError("unknown subgroup '" + spec + "' (use G, 1 or ncl(w1;w2;...))");
}

std::vector<std::string> subgroup_specs(const std::string& list, int n, int default_n) {
  std::vector<std::string> specs = split_top(list);
  if (specs.empty()) specs.assign(static_cast<std::size_t>(n > 0 ? n : default_n), "G");
  if (n > 0 && specs.size() != static_cast<std::size_t>(n)) {
    throw InputError("--n is " + std::to_string(n) + " but " + std::to_string(specs.size()) + " subgroups were given");
  }
  return specs;
}

Json finite_inputs(const CatalogGroup& g, const std::vector<std::string>& specs, const std::vector<FinSubgroup>& subs) {
  Json s = Json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    s.push_back({{"spec", specs[i]}, {"order", subs[i].order()}, {"generators", describe_subgroup(subs[i])}});
  }
  return Json{{"engine", "finite"}, {"group", g.name}, {"order", g.group->order()}, {"subgroups", s}};
}

Json pc_inputs(const FreeInput& f, const std::vector<std::string>& specs, const std::vector<PcSubgroup>& subs) {
  Json s = Json::array();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    s.push_back({{"spec", specs[i]}, {"hirsch_length", subs[i].hirsch_length()}});
  }
  return Json{{"engine", "nilpotent"},
              {"rank", f.group->rank()},
              {"class", f.group->cls()},
              {"basis_size", f.group->size()},
              {"subgroups", s}};
}

Json size_json(const FinSubgroup& h) { return Json{{"order", h.order()}}; }
Json size_json(const PcSubgroup& h) { return Json{{"hirsch_length", h.hirsch_length()}}; }

void write_inputs(Report& r, const Json& inputs) {
  r.data["inputs"] = inputs;
  if (inputs["engine"] == "finite") {
    r.text << "group: " << inputs["group"].get<std::string>() << " (order " << inputs["order"].get<std::size_t>() << ")\n";
    for (std::size_t i = 0; i < inputs["subgroups"].size(); ++i) {
      const auto& s = inputs["subgroups"][i];
      r.text << "N" << i + 1 << ": " << s["spec"].get<std::string>() << " = " << s["generators"].get<std::string>()
             << " (order " << s["order"].get<std::size_t>() << ")\n";
    }
  } else {
    r.text << "group: free nilpotent of rank " << inputs["rank"].get<int>() << " and class " << inputs["class"].get<int>()
           << " (" << inputs["basis_size"].get<int>() << " basic commutators)\n";
    for (std::size_t i = 0; i < inputs["subgroups"].size(); ++i) {
      const auto& s = inputs["subgroups"][i];
      r.text << "N" << i + 1 << ": " << s["spec"].get<std::string>() << " (hirsch length "
             << s["hirsch_length"].get<std::size_t>() << ")\n";
    }
  }
}

template <class S>
void write_colimit(Report& r, const ColimitReport<S>& rep) {
  r.data["formula"] = rep.formula;
  r.text << "formula: " << rep.formula << "\n";
  write_checks(r, rep.checks);
  r.data["numerator"] = size_json(rep.numerator);
  r.data["denominator"] = size_json(rep.denominator);
  r.data["abelian"] = rep.abelian;
  r.text << "numerator: " << SubgroupOps<S>::describe(rep.numerator) << "\n";
  r.text << "denominator: " << SubgroupOps<S>::describe(rep.denominator) << "\n";
  if (!rep.abelian) r.text << "quotient is not abelian; invariants below are of its abelianization\n";
  write_invariants(r, rep.invariants);
  r.data["notes"] = rep.notes;
  for (const auto& n : rep.notes) r.text << "note: " << n << "\n";
}

// Engine-independent bodies of the tuple verbs.
template <class S>
void tuple_verb(Report& r, const std::string& verb, const std::vector<S>& subs) {
  if (verb == "connectivity") {
    NormalTuple<S> t(subs);
    auto c = is_connected_tuple(t);
    r.data["connected"] = c.connected;
    r.data["pairs_checked"] = c.pairs_checked;
    r.text << "connected: " << (c.connected ? "yes" : "no") << "\n";
    r.text << "pairs checked: " << c.pairs_checked << "\n";
    if (!c.connected) {
      r.data["witness"] = {{"I", index_set(c.I)}, {"J", index_set(c.J)}};
      r.text << "witness: I=" << index_set(c.I) << ", J=" << index_set(c.J) << "\n";
    }
  } else if (verb == "pi") {
    NormalTuple<S> t(subs);
    auto checks = subtuple_checks(t);
    bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    if (!ok) {
      r.data["formula"] = "pi_n";
      write_checks(r, checks);
      r.data["refused"] = true;
      r.text << "refused: connectivity hypothesis fails\n";
      r.code = kExitHypothesis;
      return;
    }
    write_colimit(r, pi_n_colimit(t));
    auto one = pi_1_colimit(t);
    r.data["pi_1"] = invariants_json(one.invariants);
    r.data["pi_1_abelian"] = one.abelian;
    r.data["pi_1_notes"] = one.notes;
    r.text << "pi_1 abelianized: " << one.invariants.to_string() << (one.abelian ? "" : " (quotient not abelian)") << "\n";
    for (const auto& n : one.notes) r.text << "note: " << n << "\n";
  } else if (verb == "pi2") {
    if (subs.size() != 3) throw InputError("pi2 needs exactly three subgroups L,M,N");
    write_colimit(r, pi_2_colimit_n3(subs[0], subs[1], subs[2]));
  } else if (verb == "h1") {
    if (subs.size() != 2) throw InputError("h1 needs exactly two subgroups M,N");
    write_colimit(r, h1_GMN(subs[0], subs[1]));
  }
}

struct Options {
  std::string group, subgroups, gens, word, r, s, strategy = "hlt", export_path;
  int n = 0, cls = 0, k = 0;
  std::size_t search = 0, limit = 0, budget = 0, tensor_budget = 0;
  bool e_quotient = false, pair = false, equality = false;
};

void run_tuple(Report& r, const std::string& verb, const Options& o, const Settings& st) {
  if (o.group.empty()) throw InputError(verb + " needs --group");
  int default_n = verb == "h1" ? 2 : 3;
  auto specs = subgroup_specs(o.subgroups, o.n, default_n);
  r.data["verb"] = verb;
  if (is_free_spec(o.group)) {
    FreeInput f = free_group(o.group, o.gens, st);
    std::vector<PcSubgroup> subs;
    for (const auto& s : specs) subs.push_back(pc_subgroup(f, s));
    write_inputs(r, pc_inputs(f, specs, subs));
    r.text << "note: computed modulo gamma_" << f.group->cls() + 1 << "\n";
    tuple_verb(r, verb, subs);
  } else {
    CatalogGroup g = finite_group(o.group, st);
    std::vector<FinSubgroup> subs;
    for (const auto& s : specs) subs.push_back(catalog_subgroup(g, s));
    write_inputs(r, finite_inputs(g, specs, subs));
    tuple_verb(r, verb, subs);
  }
}

void run_search(Report& r, const Options& o) {
  auto s = search_disconnected_triples(o.search);
  r.data["verb"] = "connectivity";
  r.data["search"] = {{"max_order", o.search}, {"groups", s.groups}, {"triples", s.triples}, {"violations", s.violations}};
  r.text << "searched " << s.triples << " normal triples in " << s.groups << " catalog groups of order <= " << o.search
         << "\n";
  r.text << "violating triples: " << s.violations << "\n";
  if (s.found) {
    Json w = Json::array();
    for (const auto& h : s.witness) w.push_back(describe_subgroup(h));
    r.data["witness"] = {{"group", s.group}, {"subgroups", w}, {"I", index_set(s.result.I)}, {"J", index_set(s.result.J)}};
    r.text << "first witness: " << s.group << " with N1=" << w[0].get<std::string>() << ", N2=" << w[1].get<std::string>()
           << ", N3=" << w[2].get<std::string>() << "; fails for I=" << index_set(s.result.I)
           << ", J=" << index_set(s.result.J) << "\n";
  } else {
    r.text << "no violating triple in this range\n";
  }
}

void run_h3(Report& r, const Options& o, const Settings& st) {
  if (o.r.empty() || o.s.empty()) throw InputError("h3check needs --r and --s");
  Alphabet a = o.gens.empty() ? Alphabet({"x", "y"}) : Alphabet(split_top(o.gens));
  int cls = o.cls > 0 ? o.cls : 3;
  auto f = PcGroup::free_nilpotent(a.size(), cls, st.pc_budget);
  PcElement rr = f->collect(parse_word(o.r, a)), ss = f->collect(parse_word(o.s, a));
  r.data["verb"] = "h3check";
  r.data["inputs"] = {{"engine", "nilpotent"}, {"rank", a.size()}, {"class", cls}, {"r", o.r}, {"s", o.s}};
  r.text << "F free on " << a.size() << " generators, class " << cls << "; r = " << o.r << ", s = " << o.s << "\n";
  auto rep = hopf_h3_check(f, rr, ss);
  write_colimit(r, rep);
  r.data["trivial"] = rep.invariants.is_trivial();
  r.text << "trivial quotient: " << (rep.invariants.is_trivial() ? "yes" : "no") << "\n";
}

void run_tensor(Report& r, const std::string& verb, const Options& o, const Settings& st) {
  if (o.group.empty()) throw InputError(verb + " needs --group");
  if (is_free_spec(o.group)) throw InputError(verb + " needs a finite group");
  CatalogGroup g = finite_group(o.group, st);
  auto specs = subgroup_specs(o.subgroups, o.n, 2);
  std::vector<FinSubgroup> subs;
  for (const auto& s : specs) subs.push_back(catalog_subgroup(g, s));
  r.data["verb"] = verb;
  write_inputs(r, finite_inputs(g, specs, subs));
  TensorBudget budget;
  budget.symbols = st.tensor_budget;
  if (o.e_quotient && subs.size() != 2) throw InputError("--E needs exactly two subgroups M,N");
  TensorPresentation tp = o.e_quotient ? build_E(subs[0], subs[1], budget) : build_T(subs, budget);
  r.data["presentation"] = o.e_quotient ? "E" : "T";
  r.data["symbols"] = tp.symbols().size();
  r.data["relators"] = tp.base().relators.size();
  const auto& fc = tp.family_counts();
  r.data["family_counts"] = {{"i", fc[0]}, {"ii", fc[1]}, {"iii", fc[2]}, {"iv", fc[3]}, {"extra", fc[4]}};
  r.text << "presentation: " << (o.e_quotient ? "E(G,M,N)" : "T(N1,...,Nn)") << "\n";
  r.text << "symbols: " << tp.symbols().size() << "\n";
  r.text << "relators: " << tp.base().relators.size() << " after deduplication (instances of families i-iv: " << fc[0] << ", " << fc[1] << ", " << fc[2]
         << ", " << fc[3] << "; extra: " << fc[4] << ")\n";
  FinSubgroup im = boundary_image(tp);
  r.data["image_order"] = im.order();
  r.text << "boundary image: order " << im.order() << "\n";
  if (!o.export_path.empty()) {
    std::ofstream f(o.export_path);
    if (!f) throw InputError("cannot write '" + o.export_path + "'");
    f << tp.to_dsl();
    r.data["exported"] = o.export_path;
    r.text << "presentation written to " << o.export_path << "\n";
  }
  if (verb != "kernel") return;

  std::vector<Strategy> strategies;
  if (o.strategy == "hlt" || o.strategy == "both") strategies.push_back(Strategy::hlt);
  if (o.strategy == "felsch" || o.strategy == "both") strategies.push_back(Strategy::felsch);
  if (strategies.empty()) throw InputError("--strategy must be hlt, felsch or both");
  Json runs = Json::array();
  std::optional<KernelReport> first;
  bool agree = true;
  for (Strategy s : strategies) {
    KernelReport k = kernel_of_boundary(tp, st.coset_limit, s);
    const char* name = s == Strategy::hlt ? "hlt" : "felsch";
    Json j{{"strategy", name},
           {"complete", k.complete},
           {"kernel_abelianization", invariants_json(k.kernel_abelianization)}};
    r.text << "[" << name << "] ";
    if (k.complete) {
      j["t_order"] = k.t_order;
      j["kernel_order"] = k.kernel_order;
      j["realized"] = k.realized;
      if (k.realized) {
        j["kernel_abelian"] = k.kernel_abelian;
        j["consistent"] = k.consistent;
      }
      r.text << "|T| = " << k.t_order << ", |ker| = " << k.kernel_order << ", ker abelianized: "
             << k.kernel_abelianization.to_string();
      if (k.realized) r.text << (k.kernel_abelian ? ", kernel abelian" : ", kernel NOT abelian");
      r.text << "\n";
    } else {
      r.text << "enumeration of T exceeded the coset limit; ker abelianized: " << k.kernel_abelianization.to_string()
             << "\n";
      r.code = kExitBudget;
    }
    if (first) {
      agree = agree && first->complete == k.complete && first->t_order == k.t_order &&
              first->kernel_order == k.kernel_order && first->kernel_abelianization == k.kernel_abelianization;
    } else {
      first = k;
    }
    runs.push_back(j);
  }
  r.data["kernel"] = runs;
  write_invariants(r, first->kernel_abelianization);
  if (strategies.size() > 1) {
    r.data["strategies_agree"] = agree;
    r.text << "strategies agree: " << (agree ? "yes" : "no") << "\n";
    if (!agree) throw std::logic_error("HLT and Felsch enumerations disagree");
  }
}

Json membership_json(const Membership& m) {
  Json j{{"in_numerator", m.in_numerator}, {"in_denominator", m.in_denominator}};
  if (m.order_known) j["order"] = m.order ? integer_json(*m.order) : Json("infinite");
  return j;
}

std::string membership_text(const Membership& m) {
  std::string s = std::string("in numerator: ") + (m.in_numerator ? "yes" : "no") +
                  ", in denominator: " + (m.in_denominator ? "yes" : "no");
  if (m.order_known) s += ", order in quotient: " + (m.order ? to_string(*m.order) : std::string("infinite"));
  return s;
}

void run_wu(Report& r, const Options& o, const Settings& st) {
  if (o.n < 1) throw InputError("wu needs --n >= 1");
  int cls = o.cls > 0 ? o.cls : std::max(o.n, 2);
  auto ctx = wu_context({o.n, cls, st.pc_budget});
  auto rep = wu_group(ctx);
  r.data["verb"] = "wu";
  r.data["inputs"] = {{"n", o.n}, {"class", cls}, {"basis_size", ctx.group->size()}};
  r.data["truncated_at_class"] = cls;
  r.data["tuples"] = rep.tuples;
  r.data["generators"] = rep.generators;
  r.data["numerator_igs"] = rep.numerator.hirsch_length();
  r.data["denominator_igs"] = rep.denominator.hirsch_length();
  r.data["central"] = rep.central;
  r.text << "wu n=" << o.n << " truncated at class " << cls << " (a quotient of the untruncated group)\n";
  r.text << "basic commutators: " << ctx.group->size() << "\n";
  r.text << "commutator tuples visited: " << rep.tuples << ", distinct generators: " << rep.generators << "\n";
  r.text << "numerator igs size: " << rep.numerator.hirsch_length() << "\n";
  r.text << "denominator igs size: " << rep.denominator.hirsch_length() << "\n";
  r.text << "quotient central: " << (rep.central ? "yes" : "no") << "\n";
  write_invariants(r, rep.invariants);
  r.data["hypothesis_checks"] = checks_json({{"denominator inside numerator", true, ""}, {"quotient central", rep.central, ""}});
  if (o.n >= 2) {
    Word h = hopf_element(o.n - 1);
    auto m = membership_check(h, ctx, rep);
    std::vector<PcElement> gens = rep.denominator.igs();
    gens.push_back(ctx.group->collect(h));
    bool generates = subgroup(ctx.group, gens) == rep.numerator;
    Json j = membership_json(m);
    j["word"] = hopf_term(o.n - 1).render(ctx.alphabet);
    j["generates_quotient"] = generates;
    r.data["hopf_element"] = j;
    r.text << "hopf element " << hopf_term(o.n - 1).render(ctx.alphabet) << ": " << membership_text(m) << "\n";
    r.text << "generator: " << (generates ? "the image of " + hopf_term(o.n - 1).render(ctx.alphabet) : "not the hopf element alone")
           << "\n";
  }
  if (!o.word.empty()) {
    Word w = parse_word(o.word, ctx.alphabet);
    auto m = membership_check(w, ctx, rep);
    Json j = membership_json(m);
    j["word"] = o.word;
    r.data["membership"] = j;
    r.text << "word " << o.word << ": " << membership_text(m) << "\n";
  }
  if (o.equality) {
    auto e = check_equality_13(ctx);
    r.data["equality"] = {{"equal", e.equal},
                          {"denominator_igs", e.denominator_hirsch},
                          {"symmetric_commutator_igs", e.product_hirsch},
                          {"discrepancy", e.discrepancy}};
    r.text << "denominator equals the symmetric commutator of the closures: " << (e.equal ? "yes" : "no");
    if (!e.equal) r.text << " (" << e.discrepancy << ")";
    r.text << "\n";
  }
}

void run_hopf(Report& r, const Options& o, const Settings& st) {
  if (o.k < 1) throw InputError("hopf needs --k >= 1");
  Alphabet a = hopf_alphabet(o.k);
  Word h = hopf_element(o.k);
  r.data["verb"] = "hopf";
  r.data["k"] = o.k;
  r.data["bracket"] = hopf_term(o.k).render(a);
  r.data["word_length"] = h.length();
  r.text << "hopf element " << o.k << ": " << hopf_term(o.k).render(a) << "\n";
  r.text << "word length: " << h.length() << "\n";
  if (o.cls <= 0) return;
  auto ctx = wu_context({o.k + 1, o.cls, st.pc_budget});
  auto rep = wu_group(ctx);
  auto m = membership_check(h, ctx, rep);
  auto sq = membership_check(h.pow(2), ctx, rep);
  r.data["class"] = o.cls;
  r.data["quotient"] = invariants_json(rep.invariants);
  r.data["membership"] = membership_json(m);
  r.data["square"] = membership_json(sq);
  r.text << "truncated at class " << o.cls << " with n=" << o.k + 1 << "; quotient " << rep.invariants.to_string() << "\n";
  r.text << "element: " << membership_text(m) << "\n";
  r.text << "square: " << membership_text(sq) << "\n";
}

void run_braid(Report& r, const Options& o, const Settings& st) {
  int cls = o.cls > 0 ? o.cls : 2;
  auto pairs = braid_check(cls, st.pc_budget);
  r.data["verb"] = "braid";
  r.data["class"] = cls;
  Json arr = Json::array();
  bool all = true;
  r.text << "relators xyx(yxy)^-1, yzy(zyz)^-1, xz(zx)^-1 truncated at class " << cls << "\n";
  for (const auto& p : pairs) {
    arr.push_back({{"i", p.i},
                   {"j", p.j},
                   {"contained", p.contained},
                   {"equal", p.equal},
                   {"meet_igs", p.meet_hirsch},
                   {"commutator_igs", p.commutator_hirsch}});
    all = all && p.equal;
    r.text << "R" << p.i << " meet R" << p.j << " vs [R" << p.i << ",R" << p.j << "]: igs sizes " << p.meet_hirsch << " / "
           << p.commutator_hirsch << ", contained: " << (p.contained ? "yes" : "no")
           << ", equal: " << (p.equal ? "yes" : "no") << "\n";
  }
  r.data["pairs"] = arr;
  r.data["all_equal"] = all;
  r.text << "equality for all pairs: " << (all ? "yes" : "no") << "\n";
}

void run_akcheck(Report& r, const Options& o, const Settings& st) {
  Presentation p;
  if (o.pair) {
    p = akbulut_kirby_pair();
  } else {
    if (o.n < 1) throw InputError("akcheck needs --n >= 1 or --pair");
    p = akbulut_kirby(o.n);
  }
  auto t = todd_coxeter(p, {}, st.coset_limit);
  r.data["verb"] = "akcheck";
  r.data["presentation"] = render_presentation(p);
  r.text << "presentation: " << render_presentation(p) << "\n";
  if (!t.complete()) {
    r.data["complete"] = false;
    r.text << "enumeration exceeded the coset limit\n";
    r.code = kExitBudget;
    return;
  }
  r.data["complete"] = true;
  r.data["order"] = t.index();
  r.data["trivial"] = t.index() == 1;
  r.text << "order: " << t.index() << "\n";
  r.text << "trivial group: " << (t.index() == 1 ? "yes" : "no") << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"colimit: homotopy formulas for tuples of normal subgroups, evaluated on concrete groups"};
  app.require_subcommand(1);
  bool json = false;
  Options o;
  app.add_flag("--json", json, "Emit a JSON report");

  auto add_group = [&](CLI::App* c) {
    c->add_option("--group", o.group, "catalog:NAME, free:RANK:CLASS, an inline presentation or @file");
    c->add_option("--subgroups", o.subgroups, "Comma-separated subgroups: G, 1, center, derived, named, ncl(w1;w2)");
    c->add_option("--n", o.n, "Number of subgroups");
    c->add_option("--gens", o.gens, "Generator names for free:RANK:CLASS");
    c->add_option("--limit", o.limit, "Coset limit");
    c->add_option("--budget", o.budget, "Basic commutator budget");
  };
  std::map<std::string, CLI::App*> verbs;
  for (const char* v : {"connectivity", "pi", "pi2", "h1"}) {
    verbs[v] = app.add_subcommand(v, std::string("Tuple formula: ") + v);
    add_group(verbs[v]);
  }
  verbs["connectivity"]->add_option("--search", o.search, "Search catalog groups up to this order for violating triples");
  verbs["connectivity"]->description("Connectivity condition for a tuple, or an exhaustive triple search");
  verbs["pi"]->description("pi_n of the colimit with hypothesis checks");
  verbs["pi2"]->description("pi_2 for three subgroups L,M,N");
  verbs["h1"]->description("H_1(G,M,N)");

  auto* h3 = app.add_subcommand("h3check", "Truncated H_3 of F/RS from single relators r, s");
  h3->add_option("--r", o.r)->required();
  h3->add_option("--s", o.s)->required();
  h3->add_option("--gens", o.gens, "Generator names (default x,y)");
  h3->add_option("--class", o.cls, "Class bound (default 3)");
  h3->add_option("--budget", o.budget);
  verbs["h3check"] = h3;

  for (const char* v : {"tensor", "kernel"}) {
    auto* c = app.add_subcommand(v, std::string(v) == "tensor" ? "Build T(N1,...,Nn) or E(G,M,N)"
                                                                 : "Kernel of the crossed-module boundary");
    add_group(c);
    c->add_flag("--E", o.e_quotient, "Use E(G,M,N) with subgroups M,N");
    c->add_option("--export", o.export_path, "Write the presentation to this file");
    c->add_option("--tensor-budget", o.tensor_budget, "Symbol budget");
    verbs[v] = c;
  }
  verbs["kernel"]->add_option("--strategy", o.strategy, "hlt, felsch or both")->default_str("hlt");

  auto* wu = app.add_subcommand("wu", "Truncated Wu quotient for n generators");
  wu->add_option("--n", o.n)->required();
  wu->add_option("--class", o.cls, "Class bound (default max(n,2))");
  wu->add_option("--word", o.word, "Membership check for a word over y0..y{n-1}");
  wu->add_flag("--equality", o.equality, "Compare the denominator with the symmetric commutator");
  wu->add_option("--budget", o.budget);
  verbs["wu"] = wu;

  auto* hopf = app.add_subcommand("hopf", "Iterated Hopf element and its membership");
  hopf->add_option("--k", o.k)->required();
  hopf->add_option("--class", o.cls, "Check membership at this class with n=k+1");
  hopf->add_option("--budget", o.budget);
  verbs["hopf"] = hopf;

  auto* braid = app.add_subcommand("braid", "Braid relator intersections versus commutators");
  braid->add_option("--class", o.cls);
  braid->add_option("--budget", o.budget);
  verbs["braid"] = braid;

  auto* ak = app.add_subcommand("akcheck", "Coset enumeration of the Akbulut-Kirby presentations");
  ak->add_option("--n", o.n);
  ak->add_flag("--pair", o.pair, "Use <x1,x2 | x1^2 x2^-3, x1^3 x2^-4>");
  ak->add_option("--limit", o.limit);
  verbs["akcheck"] = ak;

  for (auto* c : app.get_subcommands({})) c->add_flag("--json", json, "Emit a JSON report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  std::string verb;
  for (const auto& [name, cmd] : verbs) {
    if (cmd->parsed()) verb = name;
  }
  Report r;
  r.data["schema"] = 1;
  r.data["verb"] = verb;
  try {
    Settings st;
    st.json = json;
    st.pc_budget = o.budget ? o.budget : env_size("COLIMIT_PC_BUDGET", kDefaultPcBudget);
    st.coset_limit = o.limit ? o.limit : env_size("COLIMIT_COSET_LIMIT", kDefaultCosetLimit);
    st.tensor_budget = o.tensor_budget ? o.tensor_budget : env_size("COLIMIT_TENSOR_BUDGET", kDefaultTensorBudget);
    if (verb == "connectivity" && o.search > 0) {
      run_search(r, o);
    } else if (verb == "connectivity" || verb == "pi" || verb == "pi2" || verb == "h1") {
      run_tuple(r, verb, o, st);
    } else if (verb == "h3check") {
      run_h3(r, o, st);
    } else if (verb == "tensor" || verb == "kernel") {
      run_tensor(r, verb, o, st);
    } else if (verb == "wu") {
      run_wu(r, o, st);
    } else if (verb == "hopf") {
      run_hopf(r, o, st);
    } else if (verb == "braid") {
      run_braid(r, o, st);
    } else if (verb == "akcheck") {
      run_akcheck(r, o, st);
    }
  } catch (const InputError& e) {
    r.code = kExitInput;
    r.data["error"] = {{"kind", "input"}, {"message", e.what()}};
    r.text << "error: " << e.what() << "\n";
  } catch (const HypothesisError& e) {
    r.code = kExitHypothesis;
    r.data["error"] = {{"kind", "hypothesis"}, {"message", e.what()}};
    r.text << "hypothesis failed: " << e.what() << "\n";
  } catch (const BudgetError& e) {
    r.code = kExitBudget;
    r.data["error"] = {{"kind", "budget"}, {"message", e.what()}};
    r.text << "budget exceeded: " << e.what() << "\n";
  } catch (const std::exception& e) {
    r.code = kExitInput;
    r.data["error"] = {{"kind", "internal"}, {"message", e.what()}};
    r.text << "error: " << e.what() << "\n";
  }
  r.data["exit_code"] = r.code;
  if (json) {
    out << r.data.dump(2) << "\n";
  } else if (r.code == kExitOk || r.code == kExitHypothesis || r.code == kExitBudget) {
    out << r.text.str();
  } else {
    err << r.text.str();
  }
  return r.code;
}

}  // namespace colimit
