#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "feyncat/category.hpp"
#include "feyncat/decorate.hpp"
#include "feyncat/descriptor.hpp"
#include "feyncat/error.hpp"
#include "feyncat/functor.hpp"
#include "feyncat/kan.hpp"
#include "feyncat/orders.hpp"
#include "feyncat/serialize.hpp"
#include "feyncat/setops.hpp"
#include "feyncat/surface.hpp"

using namespace feyncat;
using nlohmann::json;

namespace {

constexpr int kPass = 0, kFail = 1, kUnstable = 2, kUsage = 64;

struct Args {
  std::string cat = "G", op, functor, src, tgt, src_dec, tgt_dec, tgt_dir, word, morphism, out, format = "table";
  std::string suite, nat = "CycAss->CycDihed";
  int bound = -1, samples = -1, cls = -1;
  std::uint64_t seed = 1;
};

class Usage : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string output_path(const std::string& out) {
  if (out.empty() || out == "-") return {};
  std::filesystem::path p(out);
  const char* dir = std::getenv("FEYNCAT_OUT_DIR");
  if (p.is_relative() && dir && *dir) p = std::filesystem::path(dir) / p;
  return p.string();
}

void emit(const Args& a, const std::string& text) {
  std::string path = output_path(a.out);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  if (auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
    std::filesystem::create_directories(parent);
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

void need(const std::string& value, const char* flag) {
  if (value.empty()) throw Usage(std::string("missing ") + flag);
}

void text_formats(const Args& a) {
  if (a.format != "json" && a.format != "table") throw Usage("--format must be json or table here");
}

int status(const Report& r) { return !r.stabilized ? kUnstable : r.pass ? kPass : kFail; }

int emit_report(const Args& a, const Report& r) {
  emit(a, a.format == "json" ? r.to_json() + "\n" : r.to_table());
  return status(r);
}

Tuple decoration(const std::string& text) { return text.empty() ? Tuple{} : parse_decoration(text); }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Usage("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

GraphMorphism read_morphism(const std::string& path) { return morphism_from_json(slurp(path)); }

// "@file.json" reads a table op
OpPtr op_named(const std::string& name) {
  if (!name.empty() && name[0] == '@') return table_op_from_json(slurp(name.substr(1)));
  return builtin_op(name);
}

int enum_hom(const Args& a) {
  text_formats(a);
  need(a.src, "--src");
  need(a.tgt, "--tgt");
  FeynmanPresentation f = builtin_category(a.cat);
  auto homs = hom_enumerate(f, parse_aggregate(a.src), parse_aggregate(a.tgt), decoration(a.src_dec),
                            decoration(a.tgt_dec));
  if (a.format == "json") {
    json j;
    j["category"] = f.name;
    j["count"] = homs.size();
    j["morphisms"] = json::array();
    for (const auto& phi : homs) j["morphisms"].push_back(json::parse(to_json(phi)));
    emit(a, j.dump(2) + "\n");
  } else {
    std::ostringstream o;
    o << "count " << homs.size() << "\n";
    for (const auto& phi : homs) o << to_json(phi) << "\n";
    emit(a, o.str());
  }
  return kPass;
}

int dec_hom_verb(const Args& a) {
  text_formats(a);
  need(a.src, "--src");
  need(a.tgt, "--tgt");
  need(a.op, "--op");
  DecoratedPresentation d = decorate(builtin_category(a.cat), op_named(a.op));
  DecoratedObject x = make_object(d, parse_aggregate(a.src), decoration(a.src_dec));
  DecoratedObject y = make_object(d, parse_aggregate(a.tgt), decoration(a.tgt_dec));
  auto homs = dec_hom(d, x, y);
  if (a.format == "json") {
    json j;
    j["category"] = d.name();
    j["count"] = homs.size();
    j["morphisms"] = json::array();
    for (const auto& m : homs) j["morphisms"].push_back(json::parse(to_json(m)));
    emit(a, j.dump(2) + "\n");
  } else {
    std::ostringstream o;
    o << "count " << homs.size() << "\n";
    for (const auto& m : homs) o << to_json(m) << "\n";
    emit(a, o.str());
  }
  return kPass;
}

FeynmanFunctor functor_of(const Args& a) { return parse_functor(a.functor.empty() ? "i:C->M" : a.functor); }

int pushforward_verb(const Args& a) {
  text_formats(a);
  need(a.tgt, "--tgt");
  FeynmanFunctor f = functor_of(a);
  OpPtr op = a.op.empty() ? terminal_op() : op_named(a.op);
  Aggregate x = parse_aggregate(a.tgt);
  int bound = a.bound;
  if (bound < 0) {
    bound = 0;
    for (const auto& c : x.corollas()) bound += default_bound(f, c, 0);
    bound += 4;
  }
  PushforwardValue v = pushforward_at(f, op, x, bound, decoration(a.tgt_dir), decoration(a.tgt_dec));
  Report r = v.report();
  r.name = "pushforward(" + f.name + "," + op->name() + ")";
  return emit_report(a, r);
}

int check_verb(const Args& a) {
  text_formats(a);
  const std::string& s = a.suite;
  if (s == "axioms") {
    return emit_report(a, check_axioms_sampled(builtin_category(a.cat), a.samples < 0 ? 200 : a.samples, a.seed));
  }
  if (s == "functor") {
    need(a.op, "--op");
    return emit_report(a, check_functor(*op_named(a.op), a.samples < 0 ? 500 : a.samples, a.seed));
  }
  if (s == "decothm") {
    need(a.op, "--op");
    OpPtr o = op_named(a.op);
    DecothmOptions opt;
    if (a.bound >= 0) opt.max_flags = a.bound;
    opt.seed = a.seed;
    return emit_report(a, verify_decothm(builtin_category(o->domain()), o, opt));
  }
  if (s == "square") {
    if (a.nat != "CycAss->CycDihed") throw Usage("only the CycAss->CycDihed quotient is built in");
    SquareOptions opt;
    if (a.samples >= 0) opt.samples = a.samples;
    opt.seed = a.seed;
    return emit_report(a, verify_square(functor_of(a), cycass_to_cycdihed(), opt));
  }
  if (s == "minimal-extension") {
    MinimalExtensionOptions opt;
    if (!a.op.empty()) opt.op = op_named(a.op);
    if (a.bound >= 0) opt.max_flags = opt.max_weight = a.bound;
    return emit_report(a, minimal_extension_check(functor_of(a), opt));
  }
  throw Usage("unknown suite '" + s + "'");
}

int classify_verb(const Args& a) {
  text_formats(a);
  need(a.word, "--word");
  SurfaceType t = classify_word(a.word);
  if (a.format == "json")
    emit(a, to_json(t, 2) + "\n");
  else
    emit(a, format_word(parse_word(a.word)) + ": " + t.to_string() + "\n");
  return kPass;
}

int export_dot(const Args& a) {
  if (a.format != "dot" && a.format != "table") throw Usage("export-dot writes dot");
  if (!a.word.empty()) {
    emit(a, to_dot(word_ribbon(parse_word(a.word))));
  } else if (a.cls >= 0) {
    need(a.tgt, "--tgt");
    Aggregate x = parse_aggregate(a.tgt);
    if (x.size() != 1) throw Usage("--class needs a single target corolla");
    FeynmanFunctor f = functor_of(a);
    auto p = pushforward_corolla(f, a.op.empty() ? builtin_op("CycAss") : op_named(a.op), x[0],
                                 a.bound < 0 ? default_bound(f, x[0], 4) : a.bound);
    if (a.cls >= static_cast<int>(p->classes().size())) throw Usage("no class " + std::to_string(a.cls));
    emit(a, to_dot(class_ribbon(*p, a.cls)));
  } else if (!a.morphism.empty()) {
    GraphMorphism phi = read_morphism(a.morphism);
    if (a.op.empty()) {
      emit(a, to_dot(phi));
    } else {
      DecoratedPresentation d = decorate(builtin_category(a.cat), op_named(a.op));
      DecoratedMorphism m = make_morphism(d, phi, decoration(a.src_dec));
      emit(a, to_dot(m.base, m.source_dec, m.target_dec));
    }
  } else {
    need(a.src, "--src, --morphism, --word or --class");
    emit(a, to_dot(parse_aggregate(a.src), decoration(a.src_dec)));
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decorated Feynman categories: enumeration, pushforwards, theorem checks, surfaces"};
  app.require_subcommand(1);
  Args a;

  auto common = [&](CLI::App* c) {
    c->add_option("--format", a.format, "json, table or dot")->check(CLI::IsMember({"json", "table", "dot"}));
    c->add_option("-o,--output", a.out, "output file (relative paths go under $FEYNCAT_OUT_DIR)");
  };
  auto objects = [&](CLI::App* c) {
    c->add_option("--src", a.src, "source object, e.g. \"*{1,2,3} x *{4,5}\"");
    c->add_option("--tgt", a.tgt, "target object");
    c->add_option("--src-dec", a.src_dec, "source decorations, ';' between corollas");
    c->add_option("--tgt-dec", a.tgt_dec, "target decorations");
  };

  auto* eh = app.add_subcommand("enum-hom", "list the morphisms between two objects");
  eh->add_option("--cat", a.cat, "category (" + join(builtin_category_names(), ' ') + ")");
  objects(eh);
  common(eh);

  auto* dh = app.add_subcommand("dec-hom", "morphisms of the decorated category");
  dh->add_option("--cat", a.cat, "base category");
  dh->add_option("--op", a.op, "decorating op (" + join(builtin_op_names(), ' ') + ", or @table.json)");
  objects(dh);
  common(dh);

  auto* pf = app.add_subcommand("pushforward", "truncated colimit f_*(op) at a target");
  pf->add_option("--functor", a.functor, "e.g. i:C->M, forget:C/CycAss, i^CycAss:C->M");
  pf->add_option("--op", a.op, "op to push forward (default Triv)");
  pf->add_option("--tgt", a.tgt, "target object");
  pf->add_option("--tgt-dir", a.tgt_dir, "target direction decorations");
  pf->add_option("--tgt-dec", a.tgt_dec, "target class of i_*(op) for decorated inclusions");
  pf->add_option("--bound", a.bound, "weight bound of the comma category");
  common(pf);

  auto* ck = app.add_subcommand("check", "run a verification suite");
  ck->add_option("suite", a.suite, "axioms | functor | decothm | square | minimal-extension")
      ->required()
      ->check(CLI::IsMember({"axioms", "functor", "decothm", "square", "minimal-extension"}));
  ck->add_option("--cat", a.cat, "category for axioms");
  ck->add_option("--op", a.op, "op");
  ck->add_option("--functor", a.functor, "functor for square and minimal-extension");
  ck->add_option("--nat", a.nat, "natural transformation for square");
  ck->add_option("--bound", a.bound, "flag bound (decothm, minimal-extension)");
  ck->add_option("--samples", a.samples, "sample count for sampled suites");
  ck->add_option("--seed", a.seed, "random seed");
  common(ck);

  auto* cl = app.add_subcommand("classify", "classify the surface of a polygon gluing word");
  cl->add_option("--word", a.word, "e.g. \"a b a^-1 b^-1\"")->required();
  common(cl);

  auto* ed = app.add_subcommand("export-dot", "write a DOT drawing");
  ed->add_option("--cat", a.cat, "category for decorated morphisms");
  ed->add_option("--op", a.op, "decorating op, or the op of --class");
  ed->add_option("--morphism", a.morphism, "morphism JSON file");
  ed->add_option("--word", a.word, "gluing word; draws its ribbon graph");
  ed->add_option("--functor", a.functor, "functor for --class");
  ed->add_option("--class", a.cls, "class index of a pushforward; draws its ribbon graph");
  ed->add_option("--bound", a.bound, "bound for --class");
  objects(ed);
  common(ed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (eh->parsed()) return enum_hom(a);
    if (dh->parsed()) return dec_hom_verb(a);
    if (pf->parsed()) return pushforward_verb(a);
    if (ck->parsed()) return check_verb(a);
    if (cl->parsed()) return classify_verb(a);
    if (ed->parsed()) return export_dot(a);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.kind() == ErrorKind::unknown_name || e.kind() == ErrorKind::parse) return kUsage;
    if (e.kind() == ErrorKind::unstable_colimit || e.kind() == ErrorKind::truncation) return kUnstable;
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
