#include "cli.hpp"

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relhyp/certificate_io.hpp"
#include "relhyp/construct.hpp"
#include "relhyp/diagram_io.hpp"
#include "relhyp/error.hpp"
#include "relhyp/motion.hpp"
#include "relhyp/presentation_io.hpp"
#include "relhyp/prover.hpp"
#include "relhyp/word_io.hpp"

namespace relhyp::cli {

namespace {

using Json = nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot read " + path);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(std::string const& path, std::string const& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw InputError("cannot write " + path);
  }
}

char const* yes_no(bool b) {
  return b ? "true" : "false";
}

std::string signed_int(int x) {
  return x > 0 ? "+" + std::to_string(x) : std::to_string(x);
}

Json parsed(std::string const& text) {
  return Json::parse(text);
}

void emit(std::ostream& out, Json const& j) {
  out << j.dump(2) << '\n';
}

void need_inputs(Config const& c, std::size_t n) {
  if (c.inputs.size() != n) {
    throw InputError("`" + c.subcommand + "` takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
  }
}

// The presentation file fixes the context: a plain one gives starting cells,
// one carrying s, c, a, b gives the normalized cells.
struct Context {
  PresentationFile file;

  RelatorCells cells() const {
    return file.normalized ? RelatorCells::from(*file.normalized) : RelatorCells::from(file.presentation);
  }
  NormalizedPresentation const& normalized(char const* what) const {
    if (!file.normalized) {
      throw Error(ErrorCode::kInvalidArgument, std::string(what) + " needs a normalized presentation file");
    }
    return *file.normalized;
  }
};

Context load(Config const& c) {
  return {parse_presentation(read_file(c.inputs.at(0)), c.allow_nonunimodular)};
}

Diagram load_valid_diagram(Context const& ctx, std::string const& path, ValidationReport* report = nullptr) {
  auto cells = ctx.cells();
  auto d     = parse_diagram(read_file(path), cells.alphabet);
  auto r     = validate(d, cells);
  if (!r.valid()) {
    throw Error(ErrorCode::kMalformedDiagram, "diagram does not validate over the presentation");
  }
  if (report) {
    *report = std::move(r);
  }
  return d;
}

char const* kind_name(FaceKind kind) {
  switch (kind) {
    case FaceKind::kExterior: return "exterior";
    case FaceKind::kPhiCell: return "phi";
    case FaceKind::kKCell: return "k";
    case FaceKind::kUnknown: return "unknown";
  }
  return "unknown";
}

int cmd_normalize(Config const& c, std::ostream& out) {
  need_inputs(c, 1);
  auto ctx = load(c);
  auto const& p = ctx.file.presentation;
  NormalizeOptions options;
  options.allow_torsion = c.allow_nonunimodular;
  auto result = normalize(p, options);
  if (auto const* fp = std::get_if<FreeProductCase>(&result)) {
    if (c.format == Format::kJson) {
      emit(out, Json{{"result", "free_product"}, {"g", format_element(fp->g)}, {"k", p.k()}});
    } else {
      out << "FREE_PRODUCT G*<x>_" << p.k() << " g=" << format_element(fp->g) << '\n';
    }
    return 0;
  }
  auto const& np   = std::get<NormalizedPresentation>(result);
  auto        cond = check_conditions(np);
  bool        sound = normalization_is_sound(np, p);
  auto        file  = serialize_normalized(p, np);
  if (c.output) {
    write_file(*c.output, file);
  }
  if (c.format == Format::kJson) {
    Json j{{"result", "normalized"}, {"presentation", parsed(file)}};
    j["conditions"] = Json::array();
    for (auto st : cond.status) {
      j["conditions"].push_back(to_string(st));
    }
    j["notes"] = cond.notes;
    j["sound"] = sound;
    emit(out, j);
  } else {
    out << "NORMALIZED s=" << np.s << " m=" << np.m << " k=" << np.k << '\n';
    out << "c=" << format_element(np.c) << '\n';
    for (std::size_t i = 0; i < np.a.size(); ++i) {
      out << "a" << i + 1 << "=" << format_element(np.a[i]) << " b" << i + 1 << "=" << format_element(np.b[i]) << '\n';
    }
    out << "v=" << format_word(np.v) << '\n';
    out << "CONDITIONS";
    for (std::size_t i = 0; i < cond.status.size(); ++i) {
      out << ' ' << i + 1 << '=' << to_string(cond.status[i]);
    }
    out << '\n';
    for (auto const& note : cond.notes) {
      out << "NOTE " << note << '\n';
    }
    out << "SOUND " << yes_no(sound) << '\n';
  }
  return sound ? 0 : 1;
}

int cmd_validate(Config const& c, std::ostream& out) {
  need_inputs(c, 2);
  auto ctx   = load(c);
  auto cells = ctx.cells();
  auto d     = parse_diagram(read_file(c.inputs[1]), cells.alphabet);
  auto r     = validate(d, cells);
  if (c.format == Format::kJson) {
    Json j{{"vertices", r.vertices}, {"edges", r.edges}, {"faces", r.faces}, {"euler", r.euler}};
    j["bad_vertices"] = Json::array();
    for (int v = 0; v < static_cast<int>(r.vertex_ok.size()); ++v) {
      if (!r.vertex_ok[v]) {
        j["bad_vertices"].push_back(d.vertex_id(v));
      }
    }
    j["face_classes"] = Json::array();
    for (int f = 0; f < d.face_count(); ++f) {
      auto const& fc = r.face_class[f];
      Json        x{{"face", d.faces()[f].id}, {"kind", kind_name(fc.kind)}};
      if (fc.kind == FaceKind::kKCell) {
        x["sign"] = fc.sign;
      }
      if (fc.p) {
        x["p"] = format_element(*fc.p);
      }
      if (!fc.note.empty()) {
        x["note"] = fc.note;
      }
      j["face_classes"].push_back(x);
    }
    j["reducible_pairs"] = Json::array();
    for (auto const& rp : r.reducible_pairs) {
      j["reducible_pairs"].push_back(
          {{"edge", d.edges()[rp.edge].id}, {"faces", {d.faces()[rp.face_a].id, d.faces()[rp.face_b].id}}});
    }
    j["phi_reduced"] = r.phi_reduced;
    j["valid"]       = r.valid();
    emit(out, j);
  } else {
    out << "VERTICES " << r.vertices << " EDGES " << r.edges << " FACES " << r.faces << " EULER " << r.euler << '\n';
    for (int v = 0; v < static_cast<int>(r.vertex_ok.size()); ++v) {
      if (!r.vertex_ok[v]) {
        out << "BAD_VERTEX " << d.vertex_id(v) << " label=" << format_element(vertex_label(d, v)) << '\n';
      }
    }
    for (int f = 0; f < d.face_count(); ++f) {
      auto const& fc = r.face_class[f];
      out << "FACE " << d.faces()[f].id << ' ' << kind_name(fc.kind);
      if (fc.kind == FaceKind::kKCell) {
        out << " sign=" << signed_int(fc.sign);
      }
      if (fc.p) {
        out << " p=" << format_element(*fc.p);
      }
      if (!fc.note.empty()) {
        out << " note=" << fc.note;
      }
      out << '\n';
    }
    for (auto const& rp : r.reducible_pairs) {
      out << "REDUCIBLE_PAIR edge:" << d.edges()[rp.edge].id << " faces:" << d.faces()[rp.face_a].id << ','
          << d.faces()[rp.face_b].id << '\n';
    }
    out << "PHI_REDUCED " << yes_no(r.phi_reduced) << '\n';
    out << "VALID " << yes_no(r.valid()) << '\n';
  }
  return r.valid() ? 0 : 1;
}

int cmd_simulate(Config const& c, std::ostream& out) {
  need_inputs(c, 2);
  auto             ctx = load(c);
  auto const&      np  = ctx.normalized("simulate");
  ValidationReport vr;
  auto             d         = load_valid_diagram(ctx, c.inputs[1], &vr);
  auto             schedules = build_standard_schedules(d, np);
  auto             report    = simulate_collisions(d, schedules);
  auto             stops     = check_separated_stops(d, schedules);
  bool             parity    = parity_holds(d, schedules);
  auto             interior  = verify_interior_free(report, d);
  bool             bound     = verify_lower_bound(report);
  // Interior collisions are only ruled out on phi-reduced diagrams.
  bool ok = bound && stops.pass() && parity && interior.localized && (interior.interior_free || !vr.phi_reduced);

  if (c.format == Format::kJson) {
    Json j{{"period", to_string(report.period)}};
    j["events"] = Json::array();
    for (auto const& ev : report.events) {
      Json x{{"location", ev.exterior ? "exterior" : "interior"}};
      if (ev.at_vertex) {
        x["vertex"] = d.vertex_id(ev.vertex);
      } else {
        x["edge"]   = d.edges()[ev.edge].id;
        x["offset"] = to_string(ev.offset);
      }
      x["time"]     = to_string(ev.time);
      x["cars"]     = ev.cars;
      x["complete"] = ev.complete;
      j["events"].push_back(x);
    }
    j["multiplicities"]    = report.multiplicities;
    j["stops"]             = {{"parking", stops.parking_ok}, {"separated", stops.separated_ok}, {"violations", stops.violations}};
    j["parity"]            = parity;
    j["interior"]          = {{"free", interior.interior_free}, {"localized", interior.localized}, {"notes", interior.notes}};
    j["exterior_edges_ok"] = report.exterior_edges_ok;
    j["complete_points"]   = report.complete_points;
    j["bound"]             = report.bound;
    j["pass"]              = bound;
    emit(out, j);
    return ok ? 0 : 1;
  }

  auto text = format_collisions(d, report);
  auto cut  = text.rfind("TOTAL ");
  out << text.substr(0, cut);
  out << "STOPS parking=" << yes_no(stops.parking_ok) << " separated=" << yes_no(stops.separated_ok) << '\n';
  for (auto const& v : stops.violations) {
    out << "STOP_VIOLATION " << v << '\n';
  }
  out << "PARITY " << yes_no(parity) << '\n';
  out << "INTERIOR free=" << yes_no(interior.interior_free) << " localized=" << yes_no(interior.localized)
      << " phi_reduced=" << yes_no(vr.phi_reduced) << '\n';
  for (auto const& [v, labels] : interior.witnesses) {
    out << "WITNESS vertex:" << d.vertex_id(v) << " labels=";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      out << (i ? "," : "") << format_element(labels[i]);
    }
    out << '\n';
  }
  out << "EXTERIOR_EDGES unique=" << yes_no(report.exterior_edges_ok) << '\n';
  out << text.substr(cut);
  return ok ? 0 : 1;
}

int cmd_stats(Config const& c, std::ostream& out) {
  need_inputs(c, 2);
  auto        ctx = load(c);
  auto const& np  = ctx.normalized("stats");
  auto        d   = load_valid_diagram(ctx, c.inputs[1]);
  auto        s   = area_stats(d, np);
  bool        ok  = s.cell_bound && s.loose_bound && (!s.alternating || s.sharp_bound);
  if (c.format == Format::kJson) {
    emit(out, Json{{"e", s.e},
                   {"d_phi", s.d_phi},
                   {"f", s.f},
                   {"k", s.k},
                   {"C", to_string(s.C)},
                   {"boundary_length", s.boundary_length},
                   {"alternating", s.alternating},
                   {"h", s.h},
                   {"cell_bound", s.cell_bound},
                   {"loose_bound", s.loose_bound},
                   {"sharp_bound", s.sharp_bound},
                   {"collision_points", s.collision_points},
                   {"collisions_within_f", s.collisions_within_f}});
  } else {
    out << "e=" << s.e << " d_phi=" << s.d_phi << " f=" << s.f << " k=" << s.k << " C=" << to_string(s.C) << '\n';
    out << "boundary_length=" << s.boundary_length << " alternating=" << yes_no(s.alternating) << " h=" << s.h << '\n';
    out << "CELL_BOUND (k-1)e<=f-2 " << yes_no(s.cell_bound) << '\n';
    out << "LOOSE_BOUND (k-1)h<|u| " << yes_no(s.loose_bound) << '\n';
    out << "SHARP_BOUND h<C|u| " << yes_no(s.sharp_bound) << '\n';
    out << "COLLISIONS points=" << s.collision_points << " within_f=" << yes_no(s.collisions_within_f) << '\n';
  }
  return ok ? 0 : 1;
}

Json certificate_json(AreaCertificate const& cert) {
  return parsed(serialize_certificate(cert));
}

void print_terms(std::ostream& out, AreaCertificate const& cert) {
  for (auto const& t : cert.terms) {
    out << "TERM f=" << format_word(t.f) << " R=";
    if (t.kind == RelatorKind::kCell) {
      out << 'k';
    } else {
      out << "phi:" << (t.p ? format_element(*t.p) : std::string("1"));
    }
    out << " sign=" << signed_int(t.sign) << '\n';
  }
}

int cmd_prove(Config const& c, std::ostream& out) {
  need_inputs(c, 2);
  auto ctx    = load(c);
  auto const& p = ctx.file.presentation;
  auto u      = parse_word(p.alphabet(), c.inputs[1]);
  auto result = bounded_prove(u, p, {.max_terms = c.max_terms, .max_conj_len = c.max_conj_len});
  if (result.certificate && c.output) {
    write_file(*c.output, serialize_certificate(*result.certificate));
  }
  if (c.format == Format::kJson) {
    Json j{{"result", result.certificate ? "proved" : "unknown"}, {"nodes", result.nodes}};
    if (result.certificate) {
      j["certificate"] = certificate_json(*result.certificate);
    }
    emit(out, j);
  } else if (result.certificate) {
    out << "PROVED terms=" << result.certificate->h() << " nodes=" << result.nodes << '\n';
    print_terms(out, *result.certificate);
  } else {
    out << "UNKNOWN nodes=" << result.nodes << " max_terms=" << c.max_terms << " max_conj_len=" << c.max_conj_len
        << '\n';
  }
  return result.certificate ? 0 : 1;
}

int cmd_verify(Config const& c, std::ostream& out) {
  need_inputs(c, 2);
  auto ctx  = load(c);
  auto const& f = ctx.file;
  auto cert = parse_certificate(read_file(c.inputs[1]), f.presentation.alphabet(),
                                f.normalized ? f.normalized->alphabet : nullptr);
  bool ok   = cert.context == CertificateContext::kStarting ? verify_certificate(cert, f.presentation)
                                                            : verify_certificate(cert, *f.normalized);
  if (c.format == Format::kJson) {
    emit(out, Json{{"result", ok ? "verified" : "refuted"},
                   {"context", to_string(cert.context)},
                   {"h", cert.h()},
                   {"e", cert.e()}});
  } else {
    out << (ok ? "VERIFIED" : "REFUTED") << " context=" << to_string(cert.context) << " h=" << cert.h()
        << " e=" << cert.e() << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_sample(Config const& c, std::ostream& out) {
  need_inputs(c, 1);
  auto         ctx = load(c);
  std::mt19937 rng(c.seed);
  RandomDiagramOptions options;
  options.faces = c.faces;
  auto text     = serialize_diagram(random_diagram(rng, ctx.cells(), options));
  if (c.output) {
    write_file(*c.output, text);
  } else {
    out << text;
  }
  return 0;
}

}  // namespace

int run(Config const& config, std::ostream& out, std::ostream& err) {
  try {
    auto const& s = config.subcommand;
    if (s == "normalize") return cmd_normalize(config, out);
    if (s == "validate") return cmd_validate(config, out);
    if (s == "simulate") return cmd_simulate(config, out);
    if (s == "stats") return cmd_stats(config, out);
    if (s == "prove") return cmd_prove(config, out);
    if (s == "verify") return cmd_verify(config, out);
    if (s == "sample") return cmd_sample(config, out);
    throw InputError("unknown subcommand \"" + s + "\"");
  } catch (Error const& e) {
    err << "ERROR: " << error_code_name(e.code()) << ": " << e.what() << '\n';
  } catch (InputError const& e) {
    err << "ERROR: io: " << e.what() << '\n';
  }
  return 2;
}

int main_with_args(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
  Config   config;
  CLI::App app{"Relative presentations: normalization, diagrams, collision motion and area certificates", "relhyp"};
  app.require_subcommand(1, 1);

  std::string format = "text";
  std::string output;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--allow-nonunimodular", config.allow_nonunimodular,
               "Accept relators with t-exponent sum other than 1, and base groups with torsion");
  app.add_option("--max-terms", config.max_terms, "Most certificate terms for prove")->check(CLI::Range(0, 16));
  app.add_option("--max-conj-len", config.max_conj_len, "Longest conjugator for prove")->check(CLI::Range(0, 16));
  app.add_option("--seed", config.seed, "Seed for sample");
  app.add_option("--faces", config.faces, "Face count for sample")->check(CLI::Range(1, 500));
  app.add_option("-o,--output", output, "Write the normalized presentation, certificate or diagram here");

  struct Spec {
    char const* name;
    char const* help;
    char const* args;
  };
  for (auto const& [name, help, args] : {
           Spec{"normalize", "Normalize a presentation", "pres"},
           Spec{"validate", "Validate a diagram", "pres diagram"},
           Spec{"simulate", "Run the standard motion and count collisions", "pres diagram"},
           Spec{"stats", "Area statistics of a diagram", "pres diagram"},
           Spec{"prove", "Search for an area certificate", "pres word"},
           Spec{"verify", "Check a certificate file", "pres certificate"},
           Spec{"sample", "Write a random valid diagram", "pres"},
       }) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("inputs", config.inputs, args)->required();
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return 0;
  } catch (CLI::ParseError const& e) {
    err << "ERROR: usage: " << e.what() << '\n';
    return 2;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  config.format     = format == "json" ? Format::kJson : Format::kText;
  if (!output.empty()) {
    config.output = output;
  }
  return run(config, out, err);
}

}  // namespace relhyp::cli
