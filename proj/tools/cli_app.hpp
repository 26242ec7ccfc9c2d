// Copyright 2026 The ceresa-harmonic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. run() is separate from main so tests can drive it
// with captured streams.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ceresa/ceresa.hpp"
#include "ceresa/dixon.hpp"
#include "ceresa/quadrature.hpp"
#include "ceresa/relation.hpp"

namespace ceresa::cli {

enum class Format { Csv, Json, Text };

struct Config {
    std::string command;
    unsigned long n = 5, k = 1, n_min = 4, n_max = 100, m_max = 100000;
    int digits = 30;
    Format format = Format::Text;
    unsigned threads = 1;
    bool all_k = false;
    bool relation = false;
    unsigned samples = 50;
    unsigned long seed = 1;
};

enum Exit { kOk = 0, kInconclusive = 1, kUsage = 2 };

inline int default_digits() {
    if (const char* env = std::getenv("CERESA_DIGITS")) {
        try {
            int d = std::stoi(env);
            if (d >= 10) return d;
        } catch (const std::exception&) {
        }
    }
    return 30;
}

// ---- emitters

inline std::string frac6(const CeresaResult& r) { return r.frac.general(6); }

inline std::string csv_header() { return "n,k,frac,err,verdict\n"; }

inline std::string csv_row(const CeresaResult& r) {
    std::ostringstream os;
    if (r.failed) {
        os << r.n << ',' << r.k << ",,,failed\n";
        return os.str();
    }
    os << r.n << ',' << r.k << ',' << frac6(r) << ',' << r.err.sci(3) << ',' << verdict_name(r.verdict) << '\n';
    return os.str();
}

inline nlohmann::ordered_json to_json(const CeresaResult& r, int digits) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["k"] = r.k;
    if (r.failed) {
        j["error"] = r.note;
        return j;
    }
    j["value"] = r.value.value().fixed(digits);
    j["frac"] = r.frac.fixed(digits);
    j["int_distance"] = r.int_distance.fixed(digits);
    j["err"] = r.err.sci(3);
    j["h_terms"] = r.h_terms;
    j["verdict"] = verdict_name(r.verdict);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline void emit_results(std::ostream& out, const std::vector<CeresaResult>& rows, const Config& cfg,
                         const std::string& title) {
    switch (cfg.format) {
        case Format::Csv:
            out << csv_header();
            for (const auto& r : rows) out << csv_row(r);
            break;
        case Format::Json: {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& r : rows) arr.push_back(to_json(r, cfg.digits));
            out << (rows.size() == 1 ? arr[0].dump(2) : arr.dump(2)) << '\n';
            break;
        }
        case Format::Text:
            out << title << '\n';
            for (const auto& r : rows) {
                out << std::setw(4) << r.n << "  ";
                if (r.failed) {
                    out << "failed: " << r.note << '\n';
                    continue;
                }
                out << std::left << std::setw(12) << frac6(r) << std::right << "  err " << r.err.sci(3) << "  "
                    << verdict_name(r.verdict) << '\n';
                if (!r.note.empty()) out << "      " << r.note << '\n';
            }
            break;
    }
}

// ---- commands

inline int cmd_table(const Config& cfg, std::ostream& out) {
    auto rows = table1(cfg.n_min, cfg.n_max, cfg.k, cfg.digits, cfg.threads);
    emit_results(out, rows, cfg, "   N  fractional part of f(N," + std::to_string(cfg.k) + ")");
    for (const auto& r : rows)
        if (r.failed) return kInconclusive;
    return kOk;
}

inline int cmd_value(const Config& cfg, std::ostream& out) {
    auto r = f_value(cfg.n, cfg.k, cfg.digits, cfg.threads);
    emit_results(out, {r}, cfg, "   N  fractional part of f(N," + std::to_string(cfg.k) + ")");
    if (cfg.relation) {
        fermat::FermatCurve c(cfg.n);
        auto t = fermat::example_triple(c);
        auto d = fermat::delta_iterated_integral(c, t.idx[0], t.idx[1], cfg.digits + 10);
        auto rel = cyclotomic_relation_search(d, cfg.n, cfg.digits);
        out << "relation search (evidence only, not a proof) for the h=1 delta integral against {" << rel.basis
            << "}: ";
        if (rel.relation_found) {
            out << "candidate relation found, coefficients";
            for (const auto& z : rel.coefficients) out << ' ' << z.get_str();
            out << ", residual " << rel.residual.sci(3) << '\n';
        } else {
            std::ostringstream b;
            b << std::setprecision(3) << rel.norm_lower_bound;
            out << "no relation with coefficient norm below " << b.str() << '\n';
        }
    }
    return kOk;
}

inline int cmd_check(const Config& cfg, std::ostream& out) {
    std::vector<CeresaResult> rows;
    if (cfg.all_k) {
        for (unsigned long k = 1; k <= max_k(cfg.n); ++k) rows.push_back(nonintegrality_check(cfg.n, k, cfg.digits));
    } else {
        rows.push_back(nonintegrality_check(cfg.n, cfg.k, cfg.digits));
    }
    if (cfg.format == Format::Csv) {
        emit_results(out, rows, cfg, "");
    } else if (cfg.format == Format::Json) {
        emit_results(out, rows, cfg, "");
    } else {
        for (const auto& r : rows) {
            out << "N=" << r.n << " k=" << r.k << ": " << verdict_name(r.verdict) << " (distance to nearest integer "
                << r.int_distance.sci(3) << ", err " << r.err.sci(3) << ")\n";
            if (!r.note.empty()) out << "  " << r.note << '\n';
        }
    }
    for (const auto& r : rows)
        if (r.verdict != Verdict::NonIntegral) return kInconclusive;
    return kOk;
}

inline int cmd_scan(const Config& cfg, std::ostream& out) {
    MultiplesScan s;
    try {
        s = multiples_scan(cfg.n, cfg.k, cfg.m_max, cfg.digits);
    } catch (const PrecisionExhausted& e) {
        out << "scan: " << e.what() << '\n';
        return kInconclusive;
    }
    bool ok = !s.first_inconclusive.has_value();
    if (cfg.format == Format::Json) {
        nlohmann::ordered_json j;
        j["n"] = s.n;
        j["k"] = s.k;
        j["m_max"] = s.m_max;
        j["verified_up_to"] = s.verified_up_to;
        j["first_inconclusive"] = ok ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(*s.first_inconclusive);
        j["err"] = s.base.err.sci(3);
        out << j.dump(2) << '\n';
    } else if (cfg.format == Format::Csv) {
        out << "n,k,m_max,verified_up_to,first_inconclusive\n"
            << s.n << ',' << s.k << ',' << s.m_max << ',' << s.verified_up_to << ','
            << (ok ? std::string() : std::to_string(*s.first_inconclusive)) << '\n';
    } else {
        out << "m f(" << s.n << "," << s.k << ") non-integral for all 1 <= m <= " << s.verified_up_to;
        if (!ok) out << "; inconclusive at m = " << *s.first_inconclusive;
        out << '\n';
    }
    return ok ? kOk : kInconclusive;
}

inline int cmd_klein(const Config& cfg, std::ostream& out) {
    auto r = klein_value(cfg.k, cfg.digits);
    emit_results(out, {r}, cfg, "Klein quartic, fractional part of the k=" + std::to_string(cfg.k) + " value");
    return kOk;
}

inline int cmd_dixon_test(const Config& cfg, std::ostream& out) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long> num(1, 999);
    unsigned failures = 0, evaluated = 0;
    for (unsigned s = 0; s < cfg.samples; ++s) {
        specfun::EulerExponents x;
        for (mpq_class* p : {&x.alpha1, &x.alpha2, &x.beta1, &x.beta2}) {
            *p = mpq_class(num(rng), 1000);
            p->canonicalize();
        }
        auto fam = specfun::dixon_family(x, cfg.digits);
        bool ok = true;
        for (const auto& a : fam) {
            if (!a.value) continue;
            ++evaluated;
            for (const auto& b : fam)
                if (b.value && !a.value->overlaps(*b.value)) ok = false;
        }
        if (!ok) {
            ++failures;
            out << "sample " << s << ": members disagree for (" << x.alpha1.get_str() << ", " << x.alpha2.get_str()
                << ", " << x.beta1.get_str() << ", " << x.beta2.get_str() << ")\n";
        }
    }
    out << "dixon-test: " << cfg.samples << " samples, " << evaluated << " members evaluated, " << failures
        << " disagreements: " << (failures ? "FAIL" : "PASS") << '\n';
    return failures ? kInconclusive : kOk;
}

inline int cmd_oracle_test(const Config& cfg, std::ostream& out) {
    fermat::FermatCurve c(cfg.n);
    const long n = static_cast<long>(cfg.n);
    std::vector<fermat::FermatIndex> I;
    for (long a = 1; a < n; ++a)
        for (long b = 1; b < n; ++b)
            if (fermat::in_index_set(c, a, b)) I.push_back({a, b});
    double worst = 0;
    for (const auto& x1 : I)
        for (const auto& x2 : I) {
            long double a1 = static_cast<long double>(x1.a) / n, b1 = static_cast<long double>(x1.b) / n;
            long double a2 = static_cast<long double>(x2.a) / n, b2 = static_cast<long double>(x2.b) / n;
            auto q = specfun::euler_double_integral({a1, b1, a2, b2, 14, 9});
            long double norm = std::beta(static_cast<double>(a1), static_cast<double>(b1)) *
                               std::beta(static_cast<double>(a2), static_cast<double>(b2));
            double d = fermat::delta_iterated_integral(c, x1, x2, 20).to_double();
            worst = std::max(worst, std::fabs(static_cast<double>(q.value / norm) - d));
        }
    std::ostringstream w;
    w << std::scientific << std::setprecision(2) << worst;
    bool ok = worst <= 1e-8;
    out << "oracle-test: N=" << cfg.n << ", " << I.size() * I.size() << " pairs, max |quadrature - closed form| = "
        << w.str() << ": " << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kOk : kInconclusive;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Abel-Jacobi invariants of Fermat curves with rigorous error bounds", "ceresa_cli"};
    app.require_subcommand(1);
    Config cfg;
    cfg.digits = default_digits();
    cfg.threads = default_threads();
    std::string format = "text";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--digits", cfg.digits, "working digits (>= 10; env CERESA_DIGITS)")
            ->check(CLI::Range(10, 2000));
        sub->add_option("--format", format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
        sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    };
    auto degree = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--n", cfg.n, "curve degree N >= 4")->check(CLI::Range(4ul, 100000ul));
        if (required) o->required();
    };

    auto* table = app.add_subcommand("table", "fractional parts of f(N,k) for n-min <= N < n-max");
    common(table);
    table->add_option("--n-min", cfg.n_min, "first N (default 4)")->check(CLI::Range(4ul, 100000ul));
    table->add_option("--n-max", cfg.n_max, "end of range, exclusive (default 100)")->check(CLI::Range(5ul, 100001ul));
    table->add_option("--k", cfg.k, "cycle dimension (default 1)")->check(CLI::PositiveNumber);

    auto* value = app.add_subcommand("value", "f(N,k) with error bound");
    common(value);
    degree(value, true);
    value->add_option("--k", cfg.k, "cycle dimension (default 1)")->check(CLI::PositiveNumber);
    value->add_flag("--relation", cfg.relation, "also run the LLL relation diagnostic (evidence only)");

    auto* check = app.add_subcommand("check", "non-integrality verdict for f(N,k)");
    common(check);
    degree(check, true);
    check->add_option("--k", cfg.k, "cycle dimension (default 1)")->check(CLI::PositiveNumber);
    check->add_flag("--all-k", cfg.all_k, "check every admissible k");

    auto* scan = app.add_subcommand("scan", "verify m f(N,k) is non-integral for m <= m-max");
    common(scan);
    degree(scan, true);
    scan->add_option("--k", cfg.k, "cycle dimension (default 1)")->check(CLI::PositiveNumber);
    scan->add_option("--m-max", cfg.m_max, "largest multiple (default 100000)")->check(CLI::PositiveNumber);

    auto* klein = app.add_subcommand("klein", "Klein quartic value on the degree 7 curve");
    common(klein);
    cfg.k = 1;
    unsigned long klein_k = 13;
    klein->add_option("--k", klein_k, "cycle dimension in [1, 13] (default 13)")->check(CLI::Range(1ul, 13ul));

    auto* dixon = app.add_subcommand("dixon-test", "pairwise agreement of the ten Euler-integral expressions");
    common(dixon);
    dixon->add_option("--samples", cfg.samples, "random exponent quadruples (default 50)");
    dixon->add_option("--seed", cfg.seed, "random seed (default 1)");

    auto* oracle = app.add_subcommand("oracle-test", "closed form vs double quadrature on all index pairs");
    common(oracle);
    degree(oracle, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    cfg.format = format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Text;
    try {
        if (*table) {
            if (cfg.n_max <= cfg.n_min) throw InvalidArgument("--n-max must exceed --n-min");
            return cmd_table(cfg, out);
        }
        if (*value) return cmd_value(cfg, out);
        if (*check) return cmd_check(cfg, out);
        if (*scan) return cmd_scan(cfg, out);
        if (*klein) {
            cfg.k = klein_k;
            return cmd_klein(cfg, out);
        }
        if (*dixon) return cmd_dixon_test(cfg, out);
        if (*oracle) return cmd_oracle_test(cfg, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInconclusive;
    }
    return kUsage;
}

}  // namespace ceresa::cli
