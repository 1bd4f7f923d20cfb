#include "porolab/corpus.hpp"
#include "porolab/csp.hpp"
#include "porolab/dsl.hpp"
#include "porolab/errors.hpp"
#include "porolab/render.hpp"
#include "porolab/report.hpp"
#include "porolab/suites.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitAnalysis = 3;
constexpr int kExitRecheck = 4;

std::size_t default_depth() {
    if (const char* env = std::getenv("POROLAB_DEPTH")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 64;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw porolab::AnalysisError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<porolab::SetSpec> load_specs(const std::string& path) {
    try {
        return porolab::parse_specs(slurp(path));
    } catch (const porolab::ParseError& e) {
        std::cerr << path << ": " << e.what() << "\n";
        std::exit(kExitParse);
    }
}

int cmd_analyze(const std::vector<std::string>& paths, std::size_t depth,
                const std::string& format) {
    // pipelines per file run concurrently; output order follows the input order
    std::vector<std::future<std::string>> jobs;
    for (const std::string& path : paths) {
        auto specs = load_specs(path);
        jobs.push_back(std::async(std::launch::async, [specs, depth, format]() {
            std::string out;
            for (const porolab::SetSpec& spec : specs) {
                auto rep = porolab::analyze_set(spec, depth);
                out += format == "text" ? porolab::report_to_text(rep) : rep.dump(2) + "\n";
            }
            return out;
        }));
    }
    try {
        for (auto& j : jobs) std::cout << j.get();
    } catch (const porolab::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return kExitAnalysis;
    }
    return kExitOk;
}

int cmd_certify(const std::string& path, std::size_t depth) {
    auto specs = load_specs(path);
    try {
        int worst = kExitOk;
        for (const porolab::SetSpec& spec : specs) {
            porolab::AnySet any = porolab::elaborate(spec);
            porolab::CspCertificate cert = porolab::csp_certify(any, depth);

            nlohmann::ordered_json j;
            j["tool"] = porolab::kToolName;
            j["version"] = porolab::kToolVersion;
            j["set"] = spec.name;
            j["status"] = porolab::to_string(cert.status);
            j["mechanism"] = cert.mechanism;
            j["depth"] = cert.depth_used;
            j["M"] = cert.M.str();
            if (cert.p_plus) j["p_plus"] = cert.p_plus->str();
            if (cert.q) {
                j["q"] = cert.q->str();
                j["t"] = cert.t->str();
                nlohmann::ordered_json cs = nlohmann::ordered_json::array();
                for (const auto& x : cert.centers) cs.push_back(x.str());
                j["centers"] = std::move(cs);
            }
            if (cert.status == porolab::CspCertificate::Status::Certified) {
                const auto& e = std::get<porolab::GermSet>(any);
                std::string why;
                bool inclusion = porolab::recheck_certificate(e, cert, depth, &why);
                bool centers_ok = porolab::recheck_centers_in_set(e, cert, &why);
                nlohmann::ordered_json rc;
                rc["inclusion"] = inclusion;
                rc["centers_in_set"] = centers_ok;
                if (!inclusion || !centers_ok) rc["why"] = why;
                j["recheck"] = std::move(rc);
                if (!inclusion || !centers_ok) {
                    std::cerr << spec.name
                              << ": certifier and re-checker disagree (internal bug signal): "
                              << why << "\n";
                    worst = kExitRecheck;
                }
            }
            std::cout << j.dump(2) << "\n";
        }
        return worst;
    } catch (const std::exception& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return kExitAnalysis;
    }
}

int cmd_render(const std::string& path, std::size_t depth, const std::string& out_path,
               bool ascii) {
    auto specs = load_specs(path);
    try {
        std::string rendered;
        for (const porolab::SetSpec& spec : specs) {
            porolab::AnySet any = porolab::elaborate(spec);
            rendered += ascii ? porolab::render_ascii(any, depth)
                              : porolab::render_svg(any, depth, spec.name);
        }
        if (out_path.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "cannot write '" << out_path << "'\n";
                return kExitAnalysis;
            }
            out << rendered;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return kExitAnalysis;
    }
}

int cmd_verify(const std::string& suite, std::size_t depth) {
    try {
        porolab::SuiteResult res = porolab::run_suite(suite, depth);
        for (const std::string& line : res.lines) std::cout << line << "\n";
        std::cout << res.name << ": " << res.passed << " passed, " << res.failed << " failed, "
                  << res.skipped << " skipped (depth " << depth << ")\n";
        return res.ok() ? kExitOk : kExitAnalysis;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitAnalysis;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"porolab — exact one-sided porosity analysis of germ sets"};
    app.require_subcommand(1);
    std::size_t depth = default_depth();

    auto* analyze = app.add_subcommand("analyze", "analyze set definitions and emit reports");
    std::vector<std::string> paths;
    std::string format = "json";
    analyze->add_option("paths", paths, "input .germ files")->required()->expected(-1);
    analyze->add_option("--depth", depth, "analysis depth");
    analyze->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));

    auto* certify = app.add_subcommand("certify", "emit a CSP certificate and re-verify it");
    std::string certify_path;
    certify->add_option("path", certify_path, "input .germ file")->required();
    certify->add_option("--depth", depth, "analysis depth");

    auto* render = app.add_subcommand("render", "draw the -ln E bubble diagram");
    std::string render_path, out_path;
    bool ascii = false;
    render->add_option("path", render_path, "input .germ file")->required();
    render->add_option("--depth", depth, "render depth");
    auto* out_opt = render->add_option("--out", out_path, "output SVG path");
    render->add_flag("--ascii", ascii, "ASCII ruler to stdout")->excludes(out_opt);

    auto* verify = app.add_subcommand("verify", "run an invariant suite over the bundled corpus");
    std::string suite;
    verify->add_option("--suite", suite, "suite name")->required();
    verify->add_option("--depth", depth, "suite depth");

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) return cmd_analyze(paths, depth, format);
    if (certify->parsed()) return cmd_certify(certify_path, depth);
    if (render->parsed()) return cmd_render(render_path, depth, out_path, ascii && out_path.empty());
    if (verify->parsed()) return cmd_verify(suite, depth);
    return kExitOk;
}
