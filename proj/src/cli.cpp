#include "fuzzy/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>

#include "fuzzy/approx.hpp"
#include "fuzzy/calculus.hpp"
#include "fuzzy/convolve.hpp"
#include "fuzzy/document.hpp"
#include "fuzzy/emit.hpp"
#include "fuzzy/errors.hpp"
#include "fuzzy/smoother.hpp"

namespace fuzzy {

namespace {

namespace fs = std::filesystem;

struct Semantic {
    int code;
};

Tolerances parse_tolerances(const std::vector<std::string>& items) {
    Tolerances t;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--tol", "expected KEY=VALUE, got " + item);
        std::string key = item.substr(0, eq);
        double v = 0;
        try {
            std::size_t used = 0;
            v = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw CLI::ValidationError("--tol", "bad value in " + item);
        }
        if (!(v > 0)) throw CLI::ValidationError("--tol", "tolerances must be positive");
        if (key == "slope") t.slope = v;
        else if (key == "level") t.level = v;
        else if (key == "zero") t.zero = v;
        else throw CLI::ValidationError("--tol", "unknown tolerance " + key);
    }
    return t;
}

void emit(std::ostream& out, const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        out << content;
    else
        write_file_atomic(out_path, content);
}

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

void print_conditions(std::ostream& out, const ConditionReport& rep) {
    for (const auto& c : rep.conditions) {
        out << "(" << c.id << ") " << to_string(c.verdict);
        for (double l : c.witness_levels) out << " level=" << fmt17(l);
        if (!c.detail.empty()) out << " : " << c.detail;
        out << "\n";
    }
    out << "u in F_N " << (rep.u_in_FN ? "true" : "false") << "\n";
    out << "u in F_C " << (rep.u_in_FC ? "true" : "false") << "\n";
    out << "w in F_D " << (rep.w_in_FD ? "true" : "false") << "\n";
    out << "theorem " << to_string(rep.theorem) << "\n";
    if (!rep.reason.empty()) out << "reason " << rep.reason << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact alpha-cut fuzzy number calculus", "fuzzy"};
    app.require_subcommand(1);
    app.fallthrough();
    std::vector<std::string> tol_items;
    app.add_option("--tol", tol_items, "Tolerance override KEY=VALUE (slope, level, zero)");
    std::string out_path;
    app.add_option("--out", out_path, "Output file (or directory for approximate)");
    std::size_t grid = 1025;
    app.add_option("--grid", grid, "Grid size")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));

    std::function<int()> action;
    Tolerances tol;

    auto* validate_cmd = app.add_subcommand("validate", "Validate a fuzzy number document");
    std::string f1, f2;
    validate_cmd->add_option("file", f1)->required();
    validate_cmd->callback([&] {
        action = [&] {
            Document doc = read_document(f1);
            try {
                FuzzyNum fz = to_fuzzy(doc);
                for (const auto& c : validate(fz).clauses) out << "clause " << c.id << " " << c.name << ": pass\n";
                out << "valid\n";
                return 0;
            } catch (const ValidationError& e) {
                out << "clause " << e.clause << ": fail: " << e.what() << "\n";
                out << "invalid\n";
                throw;
            }
        };
    });

    auto* cut_cmd = app.add_subcommand("cut", "Print the alpha-cut [lo, hi]");
    double alpha = 0;
    bool strong = false;
    cut_cmd->add_option("file", f1)->required();
    cut_cmd->add_option("alpha", alpha)->required();
    cut_cmd->add_flag("--strong", strong, "Strong cut");
    cut_cmd->callback([&] {
        action = [&] {
            FuzzyNum fz = load_document(f1);
            Interval c = strong ? strong_cut(fz, alpha) : alpha_cut(fz, alpha);
            out << fmt17(c.lo) << " " << fmt17(c.hi) << "\n";
            return 0;
        };
    });

    auto* mem_cmd = app.add_subcommand("membership", "Print u(x) and its one-sided limits");
    double xval = 0;
    mem_cmd->add_option("file", f1)->required();
    mem_cmd->add_option("x", xval)->required();
    mem_cmd->callback([&] {
        action = [&] {
            FuzzyNum fz = load_document(f1);
            out << "mu " << fmt17(membership(fz, xval)) << "\n";
            out << "left_limit " << fmt17(membership_left_limit(fz, xval)) << "\n";
            out << "right_limit " << fmt17(membership_right_limit(fz, xval)) << "\n";
            return 0;
        };
    });

    auto* classify_cmd = app.add_subcommand("classify", "List non-differentiable points");
    classify_cmd->add_option("file", f1)->required();
    classify_cmd->callback([&] {
        action = [&] {
            FuzzyNum fz = load_document(f1);
            out << "x,kind,branch,level,limit,left_slope,right_slope\n";
            for (const auto& p : classify_points(fz, tol)) {
                out << fmt17(p.x) << "," << to_string(p.kind) << "," << to_string(p.branch) << "," << fmt17(p.level)
                    << "," << fmt17(p.limit) << "," << fmt17(p.left_slope) << "," << fmt17(p.right_slope) << "\n";
            }
            return 0;
        };
    });

    auto* class_cmd = app.add_subcommand("class", "Print class membership flags");
    class_cmd->add_option("file", f1)->required();
    class_cmd->callback([&] {
        action = [&] {
            ClassFlags f = class_membership(load_document(f1), tol);
            auto b = [](bool v) { return v ? "true" : "false"; };
            out << "F_T " << b(f.in_FT) << "\nF_N " << b(f.in_FN) << "\nF_C " << b(f.in_FC) << "\nF_D " << b(f.in_FD)
                << "\n";
            return 0;
        };
    });

    auto* metric_cmd = app.add_subcommand("metric", "Supremum metric between two fuzzy numbers");
    metric_cmd->add_option("u", f1)->required();
    metric_cmd->add_option("v", f2)->required();
    metric_cmd->callback([&] {
        action = [&] {
            MetricResult m = sup_metric(load_document(f1), load_document(f2));
            out << "d_inf " << fmt17(m.value) << "\ncertified_gap " << fmt17(m.certified_gap) << "\n";
            return 0;
        };
    });

    auto* conv_cmd = app.add_subcommand("convolve", "Sup-min convolution u + v");
    conv_cmd->add_option("u", f1)->required();
    conv_cmd->add_option("v", f2)->required();
    conv_cmd->callback([&] {
        action = [&] {
            FuzzyNum w = convolve(load_document(f1), load_document(f2));
            emit(out, out_path, format_document(to_document(w, stem(f1) + "_conv_" + stem(f2))));
            return 0;
        };
    });

    auto* scale_cmd = app.add_subcommand("scale", "Scalar multiple r * v");
    double r = 1;
    scale_cmd->add_option("r", r)->required();
    scale_cmd->add_option("v", f1)->required();
    scale_cmd->callback([&] {
        action = [&] {
            FuzzyNum w = scale(r, load_document(f1));
            emit(out, out_path, format_document(to_document(w, stem(f1) + "_scaled")));
            return 0;
        };
    });

    auto* check_cmd = app.add_subcommand("smooth-check", "Check smoother conditions for w against u");
    check_cmd->add_option("u", f1)->required();
    check_cmd->add_option("w", f2)->required();
    check_cmd->callback([&] {
        action = [&] {
            ConditionReport rep = check_smoother_conditions(load_document(f1), load_document(f2), tol);
            print_conditions(out, rep);
            return rep.theorem == Theorem::none ? 1 : 0;
        };
    });

    double width = 1;
    bool preserve_core = false;
    double cap = 0;
    auto* synth_cmd = app.add_subcommand("synthesize", "Build a smoother for u");
    synth_cmd->add_option("u", f1)->required();
    synth_cmd->add_option("--p", width, "Support width")->check(CLI::PositiveNumber);
    synth_cmd->add_flag("--preserve-core", preserve_core, "Shift the smoother core to {0}");
    synth_cmd->add_option("--lipschitz-cap", cap, "Largest membership slope")->check(CLI::PositiveNumber);
    synth_cmd->callback([&] {
        action = [&] {
            SynthesisOptions o;
            o.preserve_core = preserve_core;
            if (cap > 0) o.lipschitz_cap = cap;
            FuzzyNum w = synthesize_smoother(load_document(f1), width, o);
            emit(out, out_path, format_document(to_document(w, stem(f1) + "_smoother")));
            return 0;
        };
    });

    auto* approx_cmd = app.add_subcommand("approximate", "Smooth approximation sequence u + p_n * w");
    std::size_t steps = 20;
    bool synth = false;
    approx_cmd->add_option("u", f1)->required();
    approx_cmd->add_option("w", f2, "Smoother document (omit with --synthesize)");
    approx_cmd->add_flag("--synthesize", synth, "Synthesize the smoother from u");
    approx_cmd->add_flag("--preserve-core", preserve_core, "Shift the smoother core to {0}");
    approx_cmd->add_option("--steps", steps, "Schedule length, p_n = 1/n")->check(CLI::PositiveNumber);
    approx_cmd->callback([&] {
        if (synth == !f2.empty()) throw CLI::ValidationError("approximate", "give exactly one of w or --synthesize");
        action = [&] {
            FuzzyNum u = load_document(f1);
            FuzzyNum zeta;
            if (synth) {
                SynthesisOptions o;
                o.preserve_core = preserve_core;
                zeta = synthesize_smoother(u, 1.0, o);
            } else {
                zeta = load_document(f2);
                if (preserve_core) zeta = core_preserving_shift(zeta);
            }
            Approximation a = approximate(u, zeta, default_schedule(steps));
            std::string csv = "n,p,measured,certified_gap,bound,satisfied,smooth\n";
            bool ok = true;
            for (std::size_t i = 0; i < a.steps.size(); ++i) {
                const StepError& e = a.errors.steps[i];
                bool smooth = a.smoothness[i].in_FD;
                ok = ok && e.satisfied && smooth;
                csv += std::to_string(i + 1) + "," + fmt17(e.p) + "," + fmt17(e.measured) + "," +
                       fmt17(e.certified_gap) + "," + fmt17(e.bound) + "," + (e.satisfied ? "true" : "false") + "," +
                       (smooth ? "true" : "false") + "\n";
            }
            if (!out_path.empty()) {
                fs::create_directories(out_path);
                char name[32];
                for (std::size_t i = 0; i < a.steps.size(); ++i) {
                    std::snprintf(name, sizeof name, "step_%02zu.fz", i + 1);
                    write_file_atomic(fs::path(out_path) / name,
                                      format_document(to_document(a.steps[i], stem(f1) + "_step_" + std::to_string(i + 1))));
                }
                write_file_atomic(fs::path(out_path) / "smoother.fz",
                                  format_document(to_document(zeta, stem(f1) + "_smoother")));
                write_file_atomic(fs::path(out_path) / "error_report.csv", csv);
            }
            out << "theorem " << to_string(a.conditions.theorem) << "\n" << csv;
            out << "monotone " << (a.errors.monotone ? "true" : "false") << "\n";
            out << "all bounds satisfied " << (a.errors.all_satisfied() ? "true" : "false") << "\n";
            return ok ? 0 : 1;
        };
    });

    auto* sample_cmd = app.add_subcommand("sample", "CSV of cuts (or membership) on a grid");
    bool as_membership = false;
    sample_cmd->add_option("file", f1)->required();
    sample_cmd->add_flag("--membership", as_membership, "Emit x,mu rows instead of cuts");
    sample_cmd->callback([&] {
        action = [&] {
            FuzzyNum fz = load_document(f1);
            emit(out, out_path, as_membership ? membership_csv(fz, grid) : cuts_csv(fz, uniform_grid(grid)));
            return 0;
        };
    });

    auto* plot_cmd = app.add_subcommand("plot", "SVG of membership functions");
    std::vector<std::string> files;
    plot_cmd->add_option("files", files)->required();
    plot_cmd->callback([&] {
        action = [&] {
            std::vector<std::pair<std::string, FuzzyNum>> curves;
            for (const auto& f : files) curves.emplace_back(stem(f), load_document(f));
            emit(out, out_path, membership_svg(curves, std::max<std::size_t>(grid, 512)));
            return 0;
        };
    });

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        tol = parse_tolerances(tol_items);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        return 2;
    }
    try {
        return action ? action() : 2;
    } catch (const ParseError& e) {
        err << "error: parse: line " << e.line << ", column " << e.column << ": " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "error: io: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: validation: clause " << e.clause << ": " << e.what() << "\n";
        return 1;
    } catch (const RefusedError& e) {
        err << "error: refused: condition " << e.condition << ": " << e.what() << "\n";
        return 1;
    } catch (const StructuralError& e) {
        err << "error: structural: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "error: domain: " << e.what() << "\n";
        return 1;
    } catch (const fs::filesystem_error& e) {
        err << "error: io: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace fuzzy
