#include "crnbif/bifurcation.hpp"
#include "crnbif/enumerate.hpp"
#include "crnbif/network.hpp"
#include "crnbif/ode.hpp"
#include "crnbif/reproduce.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace crn;

namespace {

constexpr int kInputError = 4;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, sep);) out.push_back(part);
    return out;
}

Network parse_or_throw(const std::string& text) {
    try {
        return parse_network(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("cannot parse network: ") + e.what());
    }
}

// "3/2,1,4" -> exact rationals; decimals are rejected to keep the pipeline exact
QVec parse_kappa(const std::string& s) {
    QVec out;
    for (const auto& part : split(s, ',')) {
        if (part.find_first_of(".eE") != std::string::npos)
            throw InputError("rate constants must be integers or fractions, got '" + part + "'");
        try {
            out.push_back(parse_rational(part));
        } catch (const std::exception&) {
            throw InputError("bad rate constant '" + part + "'");
        }
    }
    return out;
}

State parse_point(const std::string& s) {
    State p;
    for (const auto& part : split(s, ',')) {
        try {
            p.push_back(to_double(parse_rational(part)));
        } catch (const std::exception&) {
            throw InputError("bad coordinate '" + part + "'");
        }
    }
    return p;
}

// "fold" or "fold,no-redundant,mixed-source,..." (a base name then flags)
ClassSpec parse_spec(const std::string& s) {
    auto parts = split(s, ',');
    if (parts.empty()) throw InputError("empty spec");
    ClassSpec spec;
    try {
        spec = named_spec(parts[0]);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
    for (size_t i = 1; i < parts.size(); ++i) {
        const auto& f = parts[i];
        if (f == "distinct-reactants") spec.distinct_reactants = true;
        else if (f == "no-redundant") spec.no_redundant = true;
        else if (f == "sources-not-collinear") spec.sources_not_collinear = true;
        else if (f == "mixed-source") spec.mixed_source = true;
        else if (f == "autocatalytic-square") spec.autocatalytic_square = true;
        else if (f == "positive-nondegenerate") spec.positive_nondegenerate = true;
        else if (f == "bimolecular") spec.max_product = 2;
        else throw InputError("unknown spec flag '" + f + "'");
    }
    return spec;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << body;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bifurcations of small planar mass-action networks"};
    app.require_subcommand(1);

    std::string spec_text, out_path;
    auto* en = app.add_subcommand("enumerate", "export a catalog of dynamical classes");
    en->add_option("--spec", spec_text, "fold | fold-bimolecular | hopf, optionally followed by ,flag")->required();
    en->add_option("--out", out_path, "JSON-lines output (stdout if omitted)");
    std::string csv_path;
    en->add_option("--csv", csv_path, "also write a CSV summary");

    std::string net_text, json_path;
    auto* an = app.add_subcommand("analyze", "full pipeline on one network");
    an->add_option("network", net_text, "reactions, e.g. \"2X->3X; X+Y->2Y; Y->0; 0->Y\"")->required();
    an->add_option("--json", json_path, "write the report here instead of stdout");

    std::string target, rep_out;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* re = app.add_subcommand("reproduce", "run a manifest target and compare counts");
    re->add_option("target", target, "target id, or 'all' / 'list'")->required();
    re->add_option("--jobs,-j", jobs, "worker threads");
    re->add_option("--out", rep_out, "directory for catalog and report files");

    std::string kappa_text, svg_path, pcsv_path;
    std::vector<std::string> starts;
    double T = 100, rtol = 1e-9, bound = 1e8;
    auto* po = app.add_subcommand("portrait", "trajectories and phase portrait");
    po->add_option("network", net_text)->required();
    po->add_option("--kappa", kappa_text, "exact rationals, comma separated")->required();
    po->add_option("--start", starts, "x,y (repeatable)")->required();
    po->add_option("--svg", svg_path);
    po->add_option("--csv", pcsv_path);
    po->add_option("-T", T, "duration");
    po->add_option("--rtol", rtol, "relative tolerance");
    po->add_option("--bound", bound, "blow-up bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInputError;
    }

    try {
        if (*en) {
            auto cat = enumerate_networks(parse_spec(spec_text), jobs);
            if (out_path.empty()) {
                write_jsonl(std::cout, cat);
            } else {
                std::ofstream f(out_path);
                if (!f) throw InputError("cannot write " + out_path);
                write_jsonl(f, cat);
            }
            if (!csv_path.empty()) {
                std::ofstream f(csv_path);
                write_csv(f, cat);
            }
            std::cerr << cat.size() << " classes (" << cat.raw_count << " raw candidates)\n";
            return 0;
        }
        if (*an) {
            auto rep = analyze(parse_or_throw(net_text));
            auto body = to_json(rep).dump(2) + "\n";
            if (json_path.empty())
                std::cout << body;
            else
                write_file(json_path, body);
            return rep.unresolved ? 3 : 0;
        }
        if (*re) {
            if (target == "list") {
                for (const auto& t : manifest()) std::cout << t.id << "  " << t.description << "\n";
                return 0;
            }
            std::vector<std::string> ids;
            if (target == "all")
                for (const auto& t : manifest()) ids.push_back(t.id);
            else if (!find_target(target))
                throw InputError("unknown target '" + target + "' (try 'reproduce list')");
            else
                ids.push_back(target);
            int worst = 0;
            for (const auto& id : ids) {
                auto rep = run_reproduce(id, jobs, rep_out.empty() ? std::nullopt : std::optional<std::string>(rep_out));
                std::cout << id << "\n";
                for (const auto& c : rep.counts)
                    std::cout << "  " << (c.pass() ? "ok  " : "FAIL") << " " << c.name << " expected " << c.expected
                              << " got " << c.actual << "\n";
                for (const auto& u : rep.unresolved) std::cout << "  unresolved: " << u << "\n";
                worst = std::max(worst, rep.exit_code());
            }
            return worst;
        }
        if (*po) {
            auto net = parse_or_throw(net_text);
            auto kappa = parse_kappa(kappa_text);
            std::vector<State> pts;
            for (const auto& s : starts) pts.push_back(parse_point(s));
            OdeOptions opt;
            opt.rtol = rtol;
            opt.blowup = bound;
            Portrait p;
            try {
                p = make_portrait(net, kappa, pts, T, opt);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            for (size_t i = 0; i < p.trajectories.size(); ++i) {
                const auto& tr = p.trajectories[i];
                std::cerr << "trajectory " << i << ": " << tr.status << ", " << tr.steps << " steps, " << tr.rejected
                          << " rejected";
                if (tr.drift) std::cerr << ", first-integral drift " << *tr.drift;
                std::cerr << "\n";
            }
            std::cerr << p.equilibria.count() << " positive equilibria" << (p.equilibria.continuum ? " (continuum)" : "")
                      << "\n";
            if (!pcsv_path.empty()) {
                std::ostringstream os;
                write_portrait_csv(os, p);
                write_file(pcsv_path, os.str());
            }
            if (!svg_path.empty()) {
                std::ostringstream os;
                write_portrait_svg(os, p);
                write_file(svg_path, os.str());
            }
            if (pcsv_path.empty() && svg_path.empty()) write_portrait_csv(std::cout, p);
            return 0;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
