#include <CLI11.hpp>

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "umbilic/errors.hpp"
#include "umbilic/foliation.hpp"
#include "umbilic/geometry.hpp"
#include "umbilic/height.hpp"
#include "umbilic/suites.hpp"
#include "umbilic/surface.hpp"
#include "umbilic/tensor_field.hpp"
#include "umbilic/util.hpp"
#include "umbilic/winding.hpp"

namespace {

using namespace umb;

struct Options {
    std::string builtin_name;
    std::vector<double> params;
    std::string surface_file;
    std::string center_text = "0,0";
    double radius = 0.3;
    int samples = 256;
    int grid = 64;
    std::string suite = "all";
    std::uint64_t seed = 0;
    std::string out_dir;
    bool no_timestamp = false;
};

SurfaceSpec resolve_surface(const Options& opt) {
    if (!opt.builtin_name.empty() && !opt.surface_file.empty())
        throw InvalidInputError("give either --builtin or --surface, not both");
    if (!opt.builtin_name.empty()) return builtin(opt.builtin_name, opt.params);
    if (!opt.surface_file.empty()) return load_surface_file(opt.surface_file);
    throw InvalidInputError("a surface is required: --builtin NAME or --surface FILE");
}

Vec2 parse_center(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw InvalidInputError("--center expects U,V");
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw InvalidInputError("--center expects two numbers U,V");
    }
}

std::string timestamp_line() {
    const std::time_t t = std::time(nullptr);
    char buf[40];
    std::strftime(buf, sizeof(buf), "# generated %Y-%m-%dT%H:%M:%SZ\n", std::gmtime(&t));
    return buf;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

// Assembles one CSV document; rows are sorted before emission and the whole
// document is printed only after the computation succeeded.
class Csv {
public:
    explicit Csv(std::string header) : header_(std::move(header)) {}

    void row(const std::string& r) { rows_.push_back(r); }
    void sort_rows() { std::sort(rows_.begin(), rows_.end()); }

    std::string text(bool with_timestamp) const {
        std::string out;
        if (with_timestamp) out += timestamp_line();
        out += header_;
        out += '\n';
        for (const std::string& r : rows_) {
            out += r;
            out += '\n';
        }
        return out;
    }

    const std::string& header() const { return header_; }
    const std::vector<std::string>& rows() const { return rows_; }

private:
    std::string header_;
    std::vector<std::string> rows_;
};

void write_file(const std::string& dir, const std::string& name, const std::string& content,
                bool append = false) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw InvalidInputError("cannot write to '" + path.string() + "'");
    out << content;
}

// ------------------------------------------------------------- commands

int cmd_index(const Options& opt) {
    const SurfaceSpec spec = resolve_surface(opt);
    const Vec2 center = parse_center(opt.center_text);
    LoopSpec loop{center, opt.radius, opt.samples, 1};
    loop.validate();
    if (spec.domain.boundary_distance(center) <= opt.radius)
        throw InvalidInputError("loop leaves the surface domain");

    const PlaneField field = traceless_field(tensor_field_of_surface(spec));
    const auto [index, final_n] = refine_until_stable(field, loop, FieldKind::Tensor);

    Csv csv("surface,center_u,center_v,radius,final_n,index,index_num2");
    csv.row(spec.name + "," + format_double(center.x) + "," + format_double(center.y) + "," +
            format_double(opt.radius) + "," + std::to_string(final_n) + "," + index.str() + "," +
            std::to_string(index.twice));

    const std::string text = csv.text(!opt.no_timestamp);
    if (!opt.out_dir.empty()) {
        const std::filesystem::path path = std::filesystem::path(opt.out_dir) / "index.csv";
        const bool exists = std::filesystem::exists(path);
        std::string chunk;
        if (!exists)
            chunk = text;
        else
            chunk = csv.rows().front() + "\n";
        write_file(opt.out_dir, "index.csv", chunk, /*append=*/true);
    }
    std::cout << text;
    return 0;
}

int cmd_scan(const Options& opt) {
    const SurfaceSpec spec = resolve_surface(opt);
    const std::vector<UmbilicHit> hits = umbilic_scan(spec, opt.grid);

    Csv csv("u,v,residual,isolation_radius,index,index_num2");
    for (const UmbilicHit& h : hits) {
        std::string index_text, twice_text;
        if (h.isolation_radius > 0.0) {
            const HalfIndex index = index_of_tensor(
                traceless_field(tensor_field_of_surface(spec)),
                LoopSpec{h.location, h.isolation_radius / 2.0, 256, 1});
            index_text = index.str();
            twice_text = std::to_string(index.twice);
        }
        csv.row(format_double(h.location.x) + "," + format_double(h.location.y) + "," +
                format_double(h.residual) + "," + format_double(h.isolation_radius) + "," +
                index_text + "," + twice_text);
    }

    const std::string text = csv.text(!opt.no_timestamp);
    write_file(opt.out_dir, "scan.csv", text);
    std::cout << text;
    return 0;
}

int cmd_foliation(const Options& opt) {
    const SurfaceSpec spec = resolve_surface(opt);
    if (opt.grid < 2) throw InvalidInputError("foliation grid must be at least 2");
    const FoliationData data = sample_foliation(spec, opt.grid, opt.grid);
    if (data.all_degenerate)
        throw DegenerateLoopError("principal direction field is degenerate everywhere (A = cI)");

    Csv csv("u,v,dir_u,dir_v,family,K,H");
    for (int family = 0; family < 2; ++family) {
        for (const FoliationSample& s : data.samples) {
            const Vec2 dir = family == 0 ? s.major_dir : s.minor_dir;
            csv.row(format_double(s.p.x) + "," + format_double(s.p.y) + "," +
                    format_double(dir.x) + "," + format_double(dir.y) + "," +
                    (family == 0 ? "major" : "minor") + "," + format_double(s.gauss) + "," +
                    format_double(s.mean));
        }
    }

    const std::string text = csv.text(!opt.no_timestamp);
    write_file(opt.out_dir, "foliation.csv", text);
    write_file(opt.out_dir.empty() ? "." : opt.out_dir, "foliation.svg",
               foliation_svg(spec, data));
    std::cout << text;
    return 0;
}

Csv thm2_block(std::uint64_t seed, bool& ok) {
    Csv csv("case_id,jA_num2,jBxi_num2,jxi_num2,holds");
    for (const auto& c : suites::index_formula_suite(seed)) {
        ok = ok && c.report.holds;
        csv.row(c.id + "," + std::to_string(c.report.j_tensor.twice) + "," +
                std::to_string(c.report.j_b_xi.twice) + "," +
                std::to_string(c.report.j_xi.twice) + "," + bool_text(c.report.holds));
    }
    csv.sort_rows();
    return csv;
}

Csv height_block(const std::vector<suites::HeightCase>& cases, bool check_eq8, bool check_probe,
                 bool& ok) {
    Csv csv("surface,a_x,a_y,a_z,radius,jA_num2,jgradh_num2,jgradf_num2,eq8_holds,probe_pass");
    for (const auto& c : cases) {
        if (check_eq8) ok = ok && c.eq8.holds && c.eq8.j_grad_f == HalfIndex::integer(0);
        if (check_probe) ok = ok && (!c.probe_applicable || c.probe_pass);
        csv.row(c.surface + "," + format_double(c.a.x) + "," + format_double(c.a.y) + "," +
                format_double(c.a.z) + "," + format_double(c.radius) + "," +
                std::to_string(c.eq8.j_tensor.twice) + "," +
                std::to_string(c.eq8.j_grad_h.twice) + "," +
                std::to_string(c.eq8.j_grad_f.twice) + "," + bool_text(c.eq8.holds) + "," +
                bool_text(c.probe_pass));
    }
    csv.sort_rows();
    return csv;
}

Csv lemma3_block(bool& ok) {
    Csv csv("case_id,index_num2,extremum_class,consistent");
    for (const auto& c : suites::gradient_bound_suite()) {
        ok = ok && c.report.consistent && c.report.index.twice == c.expected_twice;
        const char* cls = "degenerate";
        switch (c.report.extremum) {
            case ExtremumClass::Minimum: cls = "min"; break;
            case ExtremumClass::Maximum: cls = "max"; break;
            case ExtremumClass::None: cls = "none"; break;
            case ExtremumClass::Degenerate: cls = "degenerate"; break;
        }
        csv.row(c.id + "," + std::to_string(c.report.index.twice) + "," + cls + "," +
                bool_text(c.report.consistent));
    }
    csv.sort_rows();
    return csv;
}

Csv homotopy_block(std::uint64_t seed, bool& ok) {
    Csv csv("case_id,min_abs_entry,jAeta_num2,jBeta_num2,corollary_holds");
    for (const auto& c : suites::homotopy_suite(seed)) {
        ok = ok && c.report.corollary_holds && c.report.min_abs_entry > 0.0;
        csv.row(c.id + "," + format_double(c.report.min_abs_entry) + "," +
                std::to_string(c.report.j_a_eta.twice) + "," +
                std::to_string(c.report.j_b_eta.twice) + "," +
                bool_text(c.report.corollary_holds));
    }
    csv.sort_rows();
    return csv;
}

Csv sharpness_block(bool& ok) {
    const suites::SharpnessResult result = suites::sharpness_suite();
    ok = ok && result.all_match && result.full_set;
    Csv csv("surface,index_num2,expected_num2,match");
    for (const auto& e : result.entries)
        csv.row(e.surface + "," + std::to_string(e.index.twice) + "," +
                std::to_string(e.expected.twice) + "," + bool_text(e.index == e.expected));
    csv.sort_rows();
    return csv;
}

int cmd_verify(const Options& opt) {
    const std::string& suite = opt.suite;
    const bool all = suite == "all";
    if (!all && suite != "thm2" && suite != "eq8" && suite != "lemma3" && suite != "homotopy" &&
        suite != "probe")
        throw InvalidInputError(
            "unknown suite '" + suite + "' (thm2, eq8, lemma3, homotopy, probe, all)");

    bool ok = true;
    std::vector<Csv> blocks;

    std::vector<suites::HeightCase> height_cases;
    if (all || suite == "eq8" || suite == "probe") height_cases = suites::height_suite();

    if (all || suite == "thm2") blocks.push_back(thm2_block(opt.seed, ok));
    if (all || suite == "eq8") blocks.push_back(height_block(height_cases, true, all, ok));
    if (all || suite == "lemma3") blocks.push_back(lemma3_block(ok));
    if (all || suite == "homotopy") blocks.push_back(homotopy_block(opt.seed, ok));
    if (suite == "probe") blocks.push_back(height_block(height_cases, false, true, ok));
    if (all) blocks.push_back(sharpness_block(ok));

    std::string text;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i) text += '\n';
        text += blocks[i].text(!opt.no_timestamp && i == 0);
    }

    write_file(opt.out_dir, "verify.csv", text);
    if (!ok) {
        std::cerr << "verify: at least one identity or probe failed\n";
        return 4;
    }
    std::cout << text;
    return 0;
}

int dispatch(const std::string& command, const Options& opt) {
    try {
        if (command == "index") return cmd_index(opt);
        if (command == "scan") return cmd_scan(opt);
        if (command == "verify") return cmd_verify(opt);
        if (command == "foliation") return cmd_foliation(opt);
        throw InvalidInputError("unknown command");
    } catch (const NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateLoopError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NonIsolatedUmbilicError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " (offset " << e.offset << ")\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Half-integer indices of principal direction fields at isolated umbilics"};
    app.require_subcommand(1);

    Options opt;
    std::string command;

    auto add_surface_flags = [&](CLI::App* sub) {
        sub->add_option("--builtin", opt.builtin_name, "built-in surface name");
        sub->add_option("--param", opt.params, "builtin parameter (repeatable)");
        sub->add_option("--surface", opt.surface_file, "surface definition file");
    };
    auto add_output_flags = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out_dir, "output directory for CSV/SVG files");
        sub->add_flag("--no-timestamp", opt.no_timestamp, "suppress the timestamp header line");
    };

    CLI::App* index = app.add_subcommand("index", "index of the principal foliation on a loop");
    add_surface_flags(index);
    index->add_option("--center", opt.center_text, "loop center U,V");
    index->add_option("--radius", opt.radius, "loop radius");
    index->add_option("--samples", opt.samples, "initial loop sample count (power of two)");
    add_output_flags(index);

    CLI::App* scan = app.add_subcommand("scan", "locate umbilics and report their indices");
    add_surface_flags(scan);
    scan->add_option("--grid", opt.grid, "scan grid resolution (>= 16)");
    add_output_flags(scan);

    CLI::App* verify = app.add_subcommand("verify", "run the identity verification suites");
    verify->add_option("--suite", opt.suite, "thm2 | eq8 | lemma3 | homotopy | probe | all");
    verify->add_option("--seed", opt.seed, "seed for randomized cases");
    add_output_flags(verify);

    CLI::App* foliation = app.add_subcommand("foliation", "principal foliation CSV + SVG portrait");
    add_surface_flags(foliation);
    foliation->add_option("--grid", opt.grid, "sampling grid resolution per side");
    add_output_flags(foliation);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    for (CLI::App* sub : {index, scan, verify, foliation})
        if (sub->parsed()) command = sub->get_name();

    return dispatch(command, opt);
}
