// Batch experiment driver: every verification in the library is exposed as
// a subcommand with a mandatory seed, deterministic output files, and a
// JSON run manifest.  Exit codes: 0 all verdicts pass, 2 usage or config
// error, 3 verdict failure, 4 internal fault.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vlcode/vlcode.hpp"

using nlohmann::json;
using namespace vlcode;

namespace {

std::string str12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct check_entry {
    std::string name;
    bool pass = true;
    json metrics = json::object();
};

struct run_manifest {
    std::string command;
    json config = json::object();
    std::vector<check_entry> checks;
    std::vector<std::string> data_files;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    json to_json() const {
        json j;
        j["command"] = command;
        j["config"] = config;
        j["library_version"] = library_version;
        j["checks"] = json::array();
        for (const auto& c : checks)
            j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"metrics", c.metrics}});
        j["data_files"] = data_files;
        j["pass"] = pass();
        return j;
    }
};

// JSON config file with command-line flags winning: a flag explicitly given
// on the command line keeps its value, everything else may be filled from
// the file.
struct config_merger {
    std::vector<std::function<void(const json&)>> appliers;

    template <class T>
    void bind(CLI::Option* opt, T& var, const std::string& key) {
        appliers.push_back([opt, &var, key](const json& j) {
            if (opt->count() == 0 && j.contains(key)) var = j.at(key).get<T>();
        });
    }

    void apply(const json& j) {
        for (auto& f : appliers) f(j);
    }
};

// --code grammar: t2 | fixfree9 | conj | conjz:A | fixed:L | <table path>
struct code_choice {
    std::optional<table_code> table;
    std::optional<conj_code> conj;
    std::string name;

    bool is_conj() const { return conj.has_value(); }
};

code_choice parse_code(const std::string& spec) {
    code_choice c;
    c.name = spec;
    if (spec == "t2") {
        c.table = t2_code();
    } else if (spec == "fixfree9") {
        c.table = fixfree9_code();
    } else if (spec == "conj" || spec == "conj:1") {
        c.conj = conj_code::santa_fe();
    } else if (spec.rfind("conjz:", 0) == 0) {
        c.conj = conj_code(std::stoi(spec.substr(6)));
    } else if (spec.rfind("fixed:", 0) == 0) {
        int l = std::stoi(spec.substr(6));
        if (l < 1 || l > 16) throw CLI::ValidationError("--code", "fixed length out of range");
        std::vector<table_code::entry> entries;
        for (std::uint32_t s = 0; s < (1u << l); ++s) {
            std::vector<std::uint32_t> bits(static_cast<std::size_t>(l));
            for (int i = 0; i < l; ++i) bits[static_cast<std::size_t>(i)] = (s >> (l - 1 - i)) & 1u;
            entries.push_back({s, word(std::move(bits))});
        }
        c.table = table_code(2, std::move(entries));
    } else {
        std::ifstream in(spec);
        if (!in) throw CLI::ValidationError("--code", "cannot open code table " + spec);
        c.table = load_code_table(in);
    }
    return c;
}

std::filesystem::path out_dir_from(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("VLCODE_OUT")) return env;
    return ".";
}

void write_manifest(const run_manifest& m, const std::filesystem::path& dir,
                    const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name);
    out << m.to_json().dump(2) << '\n';
}

json estimate_json(const estimate& e) {
    return {{"mean", e.mean}, {"stderr", e.stderr_}, {"n", e.n}};
}

// ---------------------------------------------------------------- code-check

void cmd_code_check(const std::string& code_spec, const std::vector<std::string>& require,
                    run_manifest& m) {
    code_choice cc = parse_code(code_spec);
    check_entry e;
    e.name = "code-check";
    if (cc.is_conj()) {
        kraft_value kv = kraft_sum(*cc.conj);
        e.metrics["kraft_value"] = kv.value;
        e.metrics["kraft_tail_bound"] = kv.tail;
        e.metrics["prefix_free"] = true;
        e.metrics["suffix_free"] = false;
        e.metrics["fix_free"] = false;
        e.metrics["complete"] = false;
    } else {
        freeness_flags f = check_freeness(*cc.table);
        kraft_value kv = kraft_sum(*cc.table);
        std::ostringstream frac;
        frac << static_cast<unsigned long long>(kv.numerator) << "/" << kv.base << "^"
             << kv.exponent;
        e.metrics["kraft_exact"] = frac.str();
        e.metrics["kraft_value"] = kv.as_double();
        e.metrics["kraft_is_one"] = kv.is_one();
        e.metrics["prefix_free"] = f.prefix_free;
        e.metrics["suffix_free"] = f.suffix_free;
        e.metrics["fix_free"] = f.fix_free;
        e.metrics["complete"] = f.complete;
    }
    for (const std::string& r : require) {
        std::string key = r == "fix" ? "fix_free"
                          : r == "prefix" ? "prefix_free"
                          : r == "suffix" ? "suffix_free"
                                          : r;
        bool ok = e.metrics.value(key, false);
        if (!ok) e.pass = false;
        e.metrics["require_" + r] = ok;
    }
    m.checks.push_back(e);
}

// ------------------------------------------------------------ encode/decode

source_word parse_pairs_arg(const std::string& s) {
    std::istringstream is(s);
    std::string tok;
    source_word out;
    while (is >> tok) {
        std::size_t colon = tok.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--text", "pair symbols are written k:z");
        pair_symbol p;
        p.k = std::stoull(tok.substr(0, colon));
        p.z = static_cast<std::uint8_t>(std::stoi(tok.substr(colon + 1)));
        out.push_back(p);
    }
    return out;
}

void cmd_encode(const std::string& code_spec, const std::string& text, bool two_sided,
                run_manifest& m, std::string& output_line) {
    code_choice cc = parse_code(code_spec);
    check_entry e;
    e.name = "encode";
    if (two_sided) {
        std::size_t dot = text.find('.');
        if (dot == std::string::npos)
            throw CLI::ValidationError("--text", "two-sided input needs a '.' origin marker");
        std::string left = text.substr(0, dot), right = text.substr(dot + 1);
        two_sided_window y;
        if (cc.is_conj()) {
            source_window x(parse_pairs_arg(left), parse_pairs_arg(right));
            y = cc.conj->encode_window(x);
        } else {
            std::istringstream ls(left), rs(right);
            word lw, rw;
            for (std::uint32_t v; ls >> v;) lw.push_back(v);
            for (std::uint32_t v; rs >> v;) rw.push_back(v);
            y = encode_window(*cc.table, two_sided_window(lw, rw));
        }
        output_line = word_to_digits(y.left_word()) + "." + word_to_digits(y.right_word());
    } else {
        word y;
        if (cc.is_conj()) {
            y = cc.conj->encode_star(parse_pairs_arg(text));
        } else {
            std::istringstream is(text);
            word x;
            for (std::uint32_t v; is >> v;) x.push_back(v);
            y = encode_star(*cc.table, x);
        }
        output_line = word_to_digits(y);
    }
    e.metrics["output"] = output_line;
    m.checks.push_back(e);
}

void cmd_decode(const std::string& code_spec, const std::string& text, bool two_sided,
                run_manifest& m, std::string& output_line) {
    code_choice cc = parse_code(code_spec);
    check_entry e;
    e.name = "decode";
    std::ostringstream os;
    if (two_sided) {
        if (cc.is_conj())
            throw CLI::ValidationError("--two-sided",
                                       "two-sided decoding needs a complete fix-free table code");
        std::size_t dot = text.find('.');
        if (dot == std::string::npos)
            throw CLI::ValidationError("--text", "two-sided input needs a '.' origin marker");
        two_sided_window y(word_from_digits(text.substr(0, dot)),
                           word_from_digits(text.substr(dot + 1)));
        auto dec = decode_two_sided(*cc.table, y);
        for (std::uint32_t s : dec.source.left_word()) os << s << ' ';
        os << '.';
        for (std::uint32_t s : dec.source.right_word()) os << ' ' << s;
        e.metrics["left_remainder"] = word_to_digits(dec.left_remainder);
        e.metrics["right_remainder"] = word_to_digits(dec.right_remainder);
    } else {
        word y = word_from_digits(text);
        if (cc.is_conj()) {
            auto dec = cc.conj->decode_prefix_stream(y);
            bool first = true;
            for (const pair_symbol& s : dec.source) {
                if (!first) os << ' ';
                os << s.k << ':' << static_cast<int>(s.z);
                first = false;
            }
            e.metrics["unparsed"] = word_to_digits(dec.unparsed);
        } else {
            auto dec = decode_prefix_stream(*cc.table, y);
            bool first = true;
            for (std::uint32_t s : dec.source) {
                if (!first) os << ' ';
                os << s;
                first = false;
            }
            e.metrics["unparsed"] = word_to_digits(dec.unparsed);
        }
    }
    output_line = os.str();
    e.metrics["output"] = output_line;
    m.checks.push_back(e);
}

// ---------------------------------------------------------------- sample

void cmd_sample(double alpha, std::uint64_t kmax, long long lo, long long hi, std::uint64_t seed,
                std::uint64_t realization, const std::filesystem::path& dir, run_manifest& m) {
    santa_fe_model model(alpha, kmax);
    process_sample ps = sample_santa_fe(model, lo, hi, seed, realization);
    std::filesystem::create_directories(dir);
    std::string fname = "sample.tsv";
    std::ofstream out(dir / fname);
    write_realization(out, ps);
    check_entry e;
    e.name = "sample";
    e.metrics["positions"] = ps.window.size();
    e.metrics["truncation_bias"] = model.truncation_bias();
    m.checks.push_back(e);
    m.data_files.push_back(fname);
}

// ---------------------------------------------------------- stationary-mean

void cmd_stationary_mean(const std::string& model_spec, const std::string& code_spec,
                         const std::string& u_digits, std::uint64_t trials, std::uint64_t seed,
                         std::size_t shifts, const std::filesystem::path& dir, run_manifest& m,
                         double alpha) {
    code_choice cc = parse_code(code_spec);
    word u = word_from_digits(u_digits);

    rho_estimate re;
    stationarity_result st;
    std::optional<double> exact;

    if (model_spec == "iid-fair" && !cc.is_conj()) {
        iid_model fair = iid_model::fair_binary();
        double L = 0.0;
        for (std::uint32_t s = 0; s < 2; ++s)
            L += 0.5 * static_cast<double>(cc.table->codeword(s).size());
        double l_cap = static_cast<double>(cc.table->max_codeword_length());
        auto factory = [&](std::uint64_t r) { return iid_stream(fair, seed, r); };
        auto codefn = [&](std::uint32_t s) { return cc.table->codeword(s); };
        re = estimate_rho(factory, codefn, L, l_cap, u, trials, seed);
        auto rho_gen = [&](std::uint64_t t) {
            iid_stream s(fair, seed + 1, t);
            counter_rng phase_rng(seed + 1, make_stream(stream_domain::phase, t));
            return rho_window_from(s, codefn, l_cap, phase_rng, u.size() + shifts);
        };
        st = stationarity_check(rho_gen, u.size(), shifts, trials);
        if (u.size() <= 8 && cc.table->max_codeword_length() <= 6 && cc.table->size() == 2)
            exact = exact_rho_iid({rat(1, 2), rat(1, 2)}, *cc.table, u,
                                  static_cast<int>(cc.table->max_codeword_length() - 1 + u.size()))
                        .to_double();
    } else if (model_spec == "santa-fe" && cc.is_conj()) {
        santa_fe_model model(alpha);
        double L = conj_length_stats_for(alpha, cc.conj->payload_length()).expected_length;
        double l_cap =
            static_cast<double>(conj_length_quantile(alpha, cc.conj->payload_length(), 1e-6));
        auto factory = [&](std::uint64_t r) { return santa_fe_stream(model, seed, r); };
        auto codefn = [&](const pair_symbol& s) { return cc.conj->codeword(s); };
        re = estimate_rho(factory, codefn, L, l_cap, u, trials, seed);
        auto rho_gen = [&](std::uint64_t t) {
            santa_fe_stream s(model, seed + 1, t);
            counter_rng phase_rng(seed + 1, make_stream(stream_domain::phase, t));
            return rho_window_from(s, codefn, l_cap, phase_rng, u.size() + shifts);
        };
        st = stationarity_check(rho_gen, u.size(), shifts, trials);
    } else {
        throw CLI::ValidationError("--model",
                                   "unsupported model/code combination " + model_spec + "/" +
                                       code_spec);
    }

    check_entry routes;
    routes.name = "estimator-consistency";
    routes.metrics["g_route"] = estimate_json(re.g_route);
    routes.metrics["phase_route"] = estimate_json(re.phase_route);
    routes.metrics["joint_sigma"] = re.joint_sigma;
    routes.pass = re.consistent;
    m.checks.push_back(routes);

    if (exact) {
        check_entry ora;
        ora.name = "exact-oracle";
        ora.metrics["exact"] = *exact;
        ora.metrics["phase_gap_sigmas"] =
            re.phase_route.stderr_ > 0
                ? std::abs(re.phase_route.mean - *exact) / re.phase_route.stderr_
                : 0.0;
        ora.pass = std::abs(re.phase_route.mean - *exact) <= 4.0 * re.phase_route.stderr_ &&
                   std::abs(re.g_route.mean - *exact) <= 4.0 * re.g_route.stderr_;
        m.checks.push_back(ora);
    }

    check_entry stat;
    stat.name = "stationarity";
    stat.metrics["max_tv"] = st.max_tv;
    stat.metrics["sigma"] = st.sigma;
    stat.pass = st.max_tv <= 4.0 * st.sigma;
    m.checks.push_back(stat);

    std::filesystem::create_directories(dir);
    std::ofstream csv(dir / "stationary-mean.csv");
    csv << "route,mean,stderr,n\n";
    csv << "g_sum," << str12(re.g_route.mean) << ',' << str12(re.g_route.stderr_) << ','
        << re.g_route.n << '\n';
    csv << "phase," << str12(re.phase_route.mean) << ',' << str12(re.phase_route.stderr_) << ','
        << re.phase_route.n << '\n';
    if (exact) csv << "exact," << str12(*exact) << ",0,0\n";
    m.data_files.push_back("stationary-mean.csv");
}

// ------------------------------------------------------------------- zipf

void cmd_zipf(double alpha, double delta, std::vector<std::uint64_t> ns, std::uint64_t seed,
              std::uint64_t trials, std::uint64_t mc_n, const std::filesystem::path& dir,
              run_manifest& m) {
    santa_fe_model model(alpha);
    std::filesystem::create_directories(dir);
    std::ofstream csv(dir / "zipf.csv");
    csv << "n,u_size,bound,floor_bound,ok\n";
    bool all_ok = true;
    json rows = json::array();
    for (std::uint64_t n : ns) {
        u_set_result u = u_size(model, delta, n);
        bool ok = static_cast<double>(u.size()) >= std::floor(u.power_law_bound);
        all_ok = all_ok && ok;
        csv << n << ',' << u.size() << ',' << str12(u.power_law_bound) << ','
            << str12(std::floor(u.power_law_bound)) << ',' << (ok ? 1 : 0) << '\n';
        rows.push_back({{"n", n}, {"u_size", u.size()}, {"bound", u.power_law_bound}, {"ok", ok}});
    }
    m.data_files.push_back("zipf.csv");

    check_entry bound;
    bound.name = "power-law-lower-bound";
    bound.metrics["rows"] = rows;
    bound.pass = all_ok;
    m.checks.push_back(bound);

    // Monte Carlo spot check of the closed-form success probability; the
    // spot window stays short because every trial draws n symbols
    if (trials > 0) {
        std::uint64_t n_spot = std::min(mc_n, ns.front());
        check_entry mc;
        mc.name = "monte-carlo-spot";
        json spots = json::array();
        bool mc_ok = true;
        for (std::uint64_t k : {1ull, 2ull, 5ull}) {
            std::uint64_t hits = 0;
            for (std::uint64_t t = 0; t < trials; ++t) {
                santa_fe_stream s(model, seed, t);
                source_word v;
                for (std::uint64_t i = 0; i < n_spot; ++i) v.push_back(s.next());
                if (predictor_s(k, v) == s.z().z(k)) ++hits;
            }
            double mc_p = static_cast<double>(hits) / static_cast<double>(trials);
            double ex = exact_prediction_prob(model, k, n_spot);
            double sd = std::sqrt(ex * (1.0 - ex) / static_cast<double>(trials));
            bool ok = std::abs(mc_p - ex) <= 4.0 * sd + 1e-12;
            mc_ok = mc_ok && ok;
            spots.push_back({{"k", k}, {"mc", mc_p}, {"exact", ex}, {"sd", sd}, {"ok", ok}});
        }
        mc.metrics["spots"] = spots;
        mc.pass = mc_ok;
        m.checks.push_back(mc);
    }
}

// ------------------------------------------------------------ champernowne

void cmd_champernowne(std::uint64_t digits, const std::string& u_digits,
                      const std::filesystem::path& dir, run_manifest& m) {
    word stream = champernowne_digits(digits + 16);
    word u = word_from_digits(u_digits);
    auto gen = [&](std::uint64_t) { return stream; };
    estimate freq = cesaro_frequency(gen, u, digits, 1);

    check_entry f;
    f.name = "cylinder-frequency";
    double expected = std::pow(10.0, -static_cast<double>(u.size()));
    f.metrics["u"] = u_digits;
    f.metrics["freq"] = freq.mean;
    f.metrics["expected"] = expected;
    f.pass = std::abs(freq.mean - expected) <= 0.02;
    m.checks.push_back(f);

    cylinder_counts counts(1);
    counts.add_sequence(stream.prefix(digits));
    plug_in_entropy h1 = block_entropy_plug_in(counts, 1);
    check_entry h;
    h.name = "plug-in-entropy";
    h.metrics["h1_nats"] = h1.h_nats;
    h.metrics["bias_estimate"] = h1.bias_estimate;
    h.metrics["ln10"] = std::log(10.0);
    m.checks.push_back(h);

    // deterministic shifted blocks have zero entropy; the Cesaro average
    // of the first ten of them does not
    block_pmf<std::uint32_t> avg;
    for (int i = 0; i < 10; ++i) avg[stream.sub(static_cast<std::size_t>(i), 1)] += 0.1;
    check_entry jensen;
    jensen.name = "jensen-gap";
    jensen.metrics["avg_entropy"] = entropy_of(avg);
    jensen.metrics["mean_shifted_entropy"] = 0.0;
    jensen.pass = entropy_of(avg) > 0.0;
    m.checks.push_back(jensen);

    std::filesystem::create_directories(dir);
    std::ofstream csv(dir / "champernowne.csv");
    csv << "digit,count,freq\n";
    for (std::uint32_t d = 0; d <= 9; ++d) {
        word dw;
        dw.push_back(d);
        csv << d << ',' << counts.count(dw) << ',' << str12(counts.freq(dw)) << '\n';
    }
    m.data_files.push_back("champernowne.csv");
}

// ----------------------------------------------------------------- energy

void cmd_energy(double alpha, std::uint64_t trials, std::uint64_t seed, std::size_t depth_lo,
                std::size_t depth_hi, std::uint64_t min_support, const std::filesystem::path& dir,
                run_manifest& m) {
    conj_code cc = conj_code::santa_fe();
    corollary_params cp = corollary_parameter_check(alpha, 1);
    check_entry params;
    params.name = "corollary-parameters";
    params.metrics["zeta_alpha"] = cp.zeta_alpha;
    params.metrics["admissible"] = cp.admissible;
    if (cp.admissible) {
        params.metrics["c_range"] = {cp.c_lo, cp.c_hi};
        params.metrics["c2_range"] = {cp.c2_lo, cp.c2_hi};
        params.metrics["c"] = cp.c_chosen;
        params.metrics["c2"] = cp.c2_chosen;
        params.metrics["M"] = cp.m_value;
        params.metrics["N"] = cp.n_value;
        params.metrics["K_tilde"] = cp.k_tilde;
    }
    m.checks.push_back(params);
    if (!cp.admissible) return;

    santa_fe_model model(alpha);
    double l_cap = static_cast<double>(conj_length_quantile(alpha, 1, 1e-6));

    // source-side scan at c: the corollary promises (1, c, f)-energy
    source_cylinder_counts src = source_counts_from_windows(
        [&](std::uint64_t t) {
            santa_fe_stream s(model, seed, t);
            std::vector<pair_symbol> v;
            for (int i = 0; i < 40; ++i) v.push_back(s.next());
            return source_word(std::move(v));
        },
        trials, 4);
    auto gfe = gfe_energy_K(
        src, [&](const pair_symbol& s) { return cc.codeword_length(s.k); }, cp.c_chosen,
        min_support);
    check_entry gfe_check;
    gfe_check.name = "gfe-scan";
    gfe_check.metrics["k_hat"] = gfe.k_hat;
    gfe_check.metrics["pairs_scanned"] = gfe.pairs_scanned;
    gfe_check.pass = gfe.k_hat <= 1.5;
    m.checks.push_back(gfe_check);

    // coded-side scans at c2 across two depths: stability, not growth
    auto coded_counts = [&](std::size_t depth, std::uint64_t salt) {
        return counts_from_windows(
            [&](std::uint64_t t) {
                santa_fe_stream s(model, seed + salt, t);
                counter_rng phase_rng(seed + salt, make_stream(stream_domain::phase, t));
                return rho_window_from(
                    s, [&](const pair_symbol& x) { return cc.codeword(x); }, l_cap, phase_rng,
                    depth + 28);
            },
            trials, depth);
    };
    auto shallow = empirical_energy_K(coded_counts(depth_lo, 1), cp.c2_chosen, min_support);
    auto deep = empirical_energy_K(coded_counts(depth_hi, 2), cp.c2_chosen, min_support);
    double ratio = shallow.k_hat > 0 ? deep.k_hat / shallow.k_hat : 0.0;

    check_entry stab;
    stab.name = "coded-scan-stability";
    stab.metrics["k_hat_shallow"] = shallow.k_hat;
    stab.metrics["k_hat_deep"] = deep.k_hat;
    stab.metrics["depth_ratio"] = ratio;
    stab.pass = ratio < 2.0;
    m.checks.push_back(stab);

    energy_certificate cert;
    cert.flavor = energy_certificate::flavor_t::coded;
    cert.K = std::max(1.0, deep.k_hat);
    cert.c = cp.c2_chosen;
    cert.witness_u = deep.witness_u;
    cert.witness_v = deep.witness_v;
    cert.support_min = min_support;
    cert.scan_depth = depth_hi;
    validate_certificate(cert, 3, false);
    std::filesystem::create_directories(dir);
    std::ofstream jf(dir / "energy-certificate.json");
    jf << cert.to_json() << '\n';
    m.data_files.push_back("energy-certificate.json");
}

// ---------------------------------------------------------------- entropy

void cmd_entropy(const std::string& check, const std::string& model_spec,
                 const std::string& code_spec, double alpha, int k_small, int block_n,
                 const std::filesystem::path& dir, run_manifest& m) {
    code_choice cc = parse_code(code_spec);
    check_entry e;
    e.name = check;

    auto iid_of = [&]() {
        if (model_spec == "iid-fair") return iid_exact::fair_binary();
        throw CLI::ValidationError("--model", "unsupported exact model " + model_spec);
    };

    if (check == "conditional-N") {
        if (cc.is_conj()) throw CLI::ValidationError("--code", "conditional-N needs a table code");
        iid_exact model = iid_of();
        std::vector<std::size_t> lens;
        for (std::uint32_t s = 0; s < model.alphabet_size(); ++s)
            lens.push_back(cc.table->codeword(s).size());
        auto c = check_conditional_N(model.pmf(), lens);
        e.metrics["h_n_given_x1"] = c.lhs;
        e.metrics["log_L_plus_eta"] = c.rhs;
        e.pass = c.gap() < 1e-10;
    } else if (check == "coded-identity") {
        if (model_spec == "sf-trunc") {
            if (!cc.is_conj())
                throw CLI::ValidationError("--code", "sf-trunc pairs need the conj code");
            santa_fe_truncated sf(alpha, k_small);
            auto c = check_coded_block_identity(
                sf.block(block_n), [&](const pair_symbol& s) { return cc.conj->codeword(s); });
            e.metrics["lhs"] = c.lhs;
            e.metrics["rhs"] = c.rhs;
            e.pass = c.gap() < 1e-10;
        } else {
            iid_exact model = iid_of();
            auto c = check_coded_block_identity(
                model.block(block_n), [&](std::uint32_t s) { return cc.table->codeword(s); });
            e.metrics["lhs"] = c.lhs;
            e.metrics["rhs"] = c.rhs;
            e.pass = c.gap() < 1e-10;
        }
    } else if (check == "sandwich") {
        iid_exact model = iid_of();
        auto c = check_sandwich(model.block(block_n + 1), block_n,
                                [&](std::uint32_t s) { return cc.table->codeword(s); });
        e.metrics["h_y_shrunk"] = c.h_y_shrunk;
        e.metrics["h_x_n"] = c.h_x_n;
        e.metrics["h_x_2n"] = c.h_x_2n;
        e.metrics["h_y_mn"] = c.h_y_mn;
        e.pass = c.first_holds && c.second_holds;
    } else if (check == "rate-ratio") {
        iid_exact model = iid_of();
        auto c = check_rate_ratio(model, *cc.table, block_n);
        e.metrics["h_nu_bar"] = c.h_nu_bar;
        e.metrics["h_mu"] = c.h_mu;
        e.metrics["L"] = c.expected_length;
        e.metrics["expected_ratio"] = c.expected_ratio;
        e.pass = std::abs(c.h_nu_bar - c.expected_ratio) <= 0.05 * c.expected_ratio;
        std::filesystem::create_directories(dir);
        std::ofstream csv(dir / "entropy-table.csv");
        c.table.to_csv(csv);
        m.data_files.push_back("entropy-table.csv");
    } else if (check == "vocab-bound") {
        santa_fe_truncated sf(alpha, k_small);
        auto c = entropy_vocab_lower_bound(sf, block_n, 0.6);
        e.metrics["h_xn"] = c.h_xn;
        e.metrics["rhs"] = c.rhs;
        e.metrics["u_size"] = c.u_size;
        e.pass = c.holds;
    } else if (check == "jensen") {
        phase_coin_model coin(2);
        auto c = check_jensen_bound(coin, 1, block_n);
        e.metrics["lhs"] = c.lhs;
        e.metrics["rhs"] = c.rhs;
        e.pass = c.holds;
    } else {
        throw CLI::ValidationError("--check", "unknown entropy check " + check);
    }
    m.checks.push_back(e);
}

// -------------------------------------------------------------- conj-suite

void cmd_conj_suite(double alpha, std::uint64_t seed, int threads, std::uint64_t expansion_n,
                    std::uint64_t expansion_r, std::uint64_t stat_trials,
                    std::uint64_t scan_trials, std::size_t bar_m, std::uint64_t bar_trials,
                    const std::filesystem::path& dir, run_manifest& m) {
    santa_fe_model model(alpha);
    conj_code cc = conj_code::santa_fe();
    conj_length_stats stats = conj_length_stats_for(alpha, 1);
    double l_cap = static_cast<double>(conj_length_quantile(alpha, 1, 1e-6));
    auto codefn = [&](const pair_symbol& s) { return cc.codeword(s); };

    // (a) expansion rate: finite, matches the analytic series of the
    // sampled law; the untruncated series and the cap bias are reported
    double sampler_L =
        conj_truncated_mean_length(alpha, 1, santa_fe_model::cap_bits + 1) +
        conj_length_tail_mass(alpha, 1, santa_fe_model::cap_bits + 1) *
            static_cast<double>(santa_fe_model::cap_bits + 2);
    auto exp_res = expansion_rate(
        [&](std::uint64_t r) { return santa_fe_stream(model, seed, r); },
        [&](const pair_symbol& s) { return cc.codeword_length(s.k); }, expansion_n, expansion_r);
    check_entry a;
    a.name = "a-expansion-rate";
    a.metrics["empirical_L"] = estimate_json(exp_res.l_estimate);
    a.metrics["series_L"] = stats.expected_length;
    a.metrics["sampler_law_L"] = sampler_L;
    a.metrics["cap_bias"] = stats.expected_length - sampler_L;
    a.metrics["eta"] = stats.eta;
    a.pass =
        std::abs(exp_res.l_estimate.mean - sampler_L) <= 3.0 * exp_res.l_estimate.stderr_ + 1e-9;
    m.checks.push_back(a);

    // (b) stationarity of the phase-randomized coded process
    auto rho_gen = [&](std::uint64_t t) {
        santa_fe_stream s(model, seed + 1, t);
        counter_rng phase_rng(seed + 1, make_stream(stream_domain::phase, t));
        return rho_window_from(s, codefn, l_cap, phase_rng, 6);
    };
    stationarity_result st = stationarity_check(rho_gen, 2, 4, stat_trials);
    check_entry b;
    b.name = "b-stationarity";
    b.metrics["max_tv"] = st.max_tv;
    b.metrics["sigma"] = st.sigma;
    b.pass = st.max_tv <= 4.0 * st.sigma;
    m.checks.push_back(b);

    // (c) finite energy via the corollary's parameters
    corollary_params cp = corollary_parameter_check(alpha, 1);
    check_entry c;
    c.name = "c-finite-energy";
    c.metrics["zeta_alpha"] = cp.zeta_alpha;
    c.metrics["admissible"] = cp.admissible;
    if (cp.admissible) {
        source_cylinder_counts src = source_counts_from_windows(
            [&](std::uint64_t t) {
                santa_fe_stream s(model, seed + 2, t);
                std::vector<pair_symbol> v;
                for (int i = 0; i < 40; ++i) v.push_back(s.next());
                return source_word(std::move(v));
            },
            scan_trials, 4);
        auto gfe = gfe_energy_K(
            src, [&](const pair_symbol& s) { return cc.codeword_length(s.k); }, cp.c_chosen, 100);
        auto coded_counts = [&](std::size_t depth, std::uint64_t salt) {
            return counts_from_windows(
                [&](std::uint64_t t) {
                    santa_fe_stream s(model, seed + salt, t);
                    counter_rng phase_rng(seed + salt, make_stream(stream_domain::phase, t));
                    return rho_window_from(s, codefn, l_cap, phase_rng, 40);
                },
                scan_trials, depth);
        };
        auto shallow = empirical_energy_K(coded_counts(6, 3), cp.c2_chosen, 30);
        auto deep = empirical_energy_K(coded_counts(12, 4), cp.c2_chosen, 30);
        c.metrics["gfe_k_hat"] = gfe.k_hat;
        c.metrics["k_hat_depth6"] = shallow.k_hat;
        c.metrics["k_hat_depth12"] = deep.k_hat;
        c.metrics["depth_ratio"] = deep.k_hat / shallow.k_hat;
        c.metrics["K_tilde"] = cp.k_tilde;
        c.pass = gfe.k_hat <= 1.5 && deep.k_hat / shallow.k_hat < 2.0;
    } else {
        c.metrics["note"] = "zeta(alpha) <= 4: corollary inadmissible, scans skipped";
    }
    m.checks.push_back(c);

    // (d) well-predictability: closed-form bound grid plus the coded
    // vocabulary growth measured on stationary-mean windows
    check_entry d;
    d.name = "d-vocabulary-growth";
    bool grid_ok = true;
    json grid = json::array();
    for (std::uint64_t n : {10ull, 100ull, 1000ull}) {
        u_set_result u = u_size(model, 0.75, n);
        bool ok = static_cast<double>(u.size()) >= std::floor(u.power_law_bound);
        grid_ok = grid_ok && ok;
        grid.push_back({{"n", n}, {"u", u.size()}, {"bound", u.power_law_bound}, {"ok", ok}});
    }
    d.metrics["u_grid"] = grid;

    std::uint32_t k_scan = 64;
    bar_u_result bm =
        bar_u_estimate(model, cc, 0.6, bar_m, k_scan, bar_trials, seed + 5, 4.0, threads);
    bar_u_result b4 =
        bar_u_estimate(model, cc, 0.6, 4 * bar_m, k_scan, bar_trials, seed + 6, 4.0, threads);
    double slope = (std::log(static_cast<double>(b4.members.size())) -
                    std::log(static_cast<double>(bm.members.size()))) /
                   std::log(4.0);
    double beta = 1.0 / alpha;
    d.metrics["bar_u_m"] = bm.members.size();
    d.metrics["bar_u_4m"] = b4.members.size();
    d.metrics["growth_slope"] = slope;
    d.metrics["beta"] = beta;
    d.pass = grid_ok && b4.members.size() > bm.members.size() && std::abs(slope - beta) < 0.35;
    m.checks.push_back(d);

    std::filesystem::create_directories(dir);
    std::ofstream csv(dir / "conj-suite.csv");
    csv << "section,metric,value\n";
    csv << "a,empirical_L," << str12(exp_res.l_estimate.mean) << '\n';
    csv << "a,series_L," << str12(stats.expected_length) << '\n';
    csv << "a,sampler_law_L," << str12(sampler_L) << '\n';
    csv << "b,max_tv," << str12(st.max_tv) << '\n';
    csv << "d,bar_u_m," << bm.members.size() << '\n';
    csv << "d,bar_u_4m," << b4.members.size() << '\n';
    m.data_files.push_back("conj-suite.csv");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variable-length coding of two-sided processes: experiment driver"};
    app.require_subcommand(1);

    std::string out_flag;
    std::string config_path;
    app.add_option("--out", out_flag, "output directory (default $VLCODE_OUT or .)");
    app.add_option("--config", config_path, "JSON config file; command-line flags win");

    config_merger merge;

    auto* sc_check = app.add_subcommand("code-check", "kraft sum and freeness flags");
    std::string cc_code = "fixfree9";
    std::vector<std::string> cc_require;
    merge.bind(sc_check->add_option("--table,--code", cc_code, "code spec or table path"), cc_code,
               "code");
    merge.bind(sc_check->add_option("--require", cc_require,
                                    "flags that must hold: prefix, suffix, fix, complete"),
               cc_require, "require");

    auto* sc_enc = app.add_subcommand("encode", "encode a source string");
    std::string enc_code = "t2", enc_text;
    bool enc_two = false;
    merge.bind(sc_enc->add_option("--code", enc_code, "code spec"), enc_code, "code");
    merge.bind(sc_enc->add_option("--text", enc_text, "source symbols"), enc_text, "text");
    merge.bind(sc_enc->add_flag("--two-sided", enc_two, "treat '.' as the origin"), enc_two,
               "two_sided");

    auto* sc_dec = app.add_subcommand("decode", "decode a coded string");
    std::string dec_code = "t2", dec_text;
    bool dec_two = false;
    merge.bind(sc_dec->add_option("--code", dec_code, "code spec"), dec_code, "code");
    merge.bind(sc_dec->add_option("--text", dec_text, "coded digits"), dec_text, "text");
    merge.bind(sc_dec->add_flag("--two-sided", dec_two, "treat '.' as the origin"), dec_two,
               "two_sided");

    auto* sc_sample = app.add_subcommand("sample", "materialize a source realization");
    double sm_alpha = 2.0;
    std::uint64_t sm_kmax = 1000000, sm_seed = 0, sm_real = 0;
    long long sm_lo = 0, sm_hi = 20;
    merge.bind(sc_sample->add_option("--alpha", sm_alpha, "power-law exponent"), sm_alpha,
               "alpha");
    merge.bind(sc_sample->add_option("--kmax", sm_kmax, "exact-computation ceiling"), sm_kmax,
               "kmax");
    merge.bind(sc_sample->add_option("--lo", sm_lo, "lowest position (<= 0)"), sm_lo, "lo");
    merge.bind(sc_sample->add_option("--hi", sm_hi, "highest position (>= 0)"), sm_hi, "hi");
    auto* sm_seed_opt = sc_sample->add_option("--seed", sm_seed, "master seed (required)");
    merge.bind(sm_seed_opt, sm_seed, "seed");
    merge.bind(sc_sample->add_option("--realization", sm_real, "realization index"), sm_real,
               "realization");

    auto* sc_rho = app.add_subcommand("stationary-mean", "dual estimators of rho([u])");
    std::string rho_model = "iid-fair", rho_code = "t2", rho_u = "1";
    std::uint64_t rho_trials = 200000, rho_seed = 0;
    std::size_t rho_shifts = 4;
    double rho_alpha = 2.0;
    merge.bind(sc_rho->add_option("--model", rho_model, "source model"), rho_model, "model");
    merge.bind(sc_rho->add_option("--code", rho_code, "code spec"), rho_code, "code");
    merge.bind(sc_rho->add_option("--u", rho_u, "cylinder word (digits)"), rho_u, "u");
    merge.bind(sc_rho->add_option("--trials", rho_trials, "Monte Carlo trials"), rho_trials,
               "trials");
    auto* rho_seed_opt = sc_rho->add_option("--seed", rho_seed, "master seed (required)");
    merge.bind(rho_seed_opt, rho_seed, "seed");
    merge.bind(sc_rho->add_option("--shifts", rho_shifts, "stationarity shift range"), rho_shifts,
               "shifts");
    merge.bind(sc_rho->add_option("--alpha", rho_alpha, "santa-fe exponent"), rho_alpha, "alpha");

    auto* sc_zipf = app.add_subcommand("zipf", "well-predictability set sizes and bound");
    double zf_alpha = 2.0, zf_delta = 0.75;
    std::vector<std::uint64_t> zf_ns = {10, 100, 1000, 10000};
    std::uint64_t zf_seed = 0, zf_trials = 100000;
    merge.bind(sc_zipf->add_option("--alpha", zf_alpha, "power-law exponent"), zf_alpha, "alpha");
    merge.bind(sc_zipf->add_option("--delta", zf_delta, "threshold in (1/2,1)"), zf_delta,
               "delta");
    merge.bind(sc_zipf->add_option("--n", zf_ns, "window lengths"), zf_ns, "n");
    auto* zf_seed_opt = sc_zipf->add_option("--seed", zf_seed, "master seed (required)");
    merge.bind(zf_seed_opt, zf_seed, "seed");
    merge.bind(sc_zipf->add_option("--trials", zf_trials, "Monte Carlo trials (0 disables)"),
               zf_trials, "trials");
    std::uint64_t zf_mc_n = 100;
    merge.bind(sc_zipf->add_option("--mc-n", zf_mc_n, "spot-check window length"), zf_mc_n,
               "mc_n");

    auto* sc_champ = app.add_subcommand("champernowne", "digit statistics of the classic stream");
    std::uint64_t ch_digits = 1000000;
    std::string ch_u = "7";
    merge.bind(sc_champ->add_option("--digits", ch_digits, "stream length"), ch_digits, "digits");
    merge.bind(sc_champ->add_option("--u", ch_u, "cylinder word (digits)"), ch_u, "u");

    auto* sc_energy = app.add_subcommand("energy", "finite-energy scans and closed forms");
    double en_alpha = 1.1;
    std::uint64_t en_trials = 800, en_seed = 0, en_support = 30;
    std::size_t en_dlo = 6, en_dhi = 12;
    merge.bind(sc_energy->add_option("--alpha", en_alpha, "power-law exponent"), en_alpha,
               "alpha");
    merge.bind(sc_energy->add_option("--trials", en_trials, "windows per scan"), en_trials,
               "trials");
    auto* en_seed_opt = sc_energy->add_option("--seed", en_seed, "master seed (required)");
    merge.bind(en_seed_opt, en_seed, "seed");
    merge.bind(sc_energy->add_option("--depth", en_dlo, "shallow scan depth"), en_dlo, "depth");
    merge.bind(sc_energy->add_option("--depth2", en_dhi, "deep scan depth"), en_dhi, "depth2");
    merge.bind(sc_energy->add_option("--min-support", en_support, "minimum pair support"),
               en_support, "min_support");

    auto* sc_entropy = app.add_subcommand("entropy", "exact entropy identities");
    std::string et_check = "conditional-N", et_model = "iid-fair", et_code = "t2";
    double et_alpha = 2.0;
    int et_ksmall = 3, et_n = 3;
    merge.bind(sc_entropy->add_option("--check", et_check, "which identity"), et_check, "check");
    merge.bind(sc_entropy->add_option("--model", et_model, "exact model"), et_model, "model");
    merge.bind(sc_entropy->add_option("--code", et_code, "code spec"), et_code, "code");
    merge.bind(sc_entropy->add_option("--alpha", et_alpha, "sf-trunc exponent"), et_alpha,
               "alpha");
    merge.bind(sc_entropy->add_option("--k-small", et_ksmall, "sf-trunc support"), et_ksmall,
               "k_small");
    merge.bind(sc_entropy->add_option("--n", et_n, "block length / depth"), et_n, "n");

    auto* sc_suite = app.add_subcommand("conj-suite", "full verification pipeline (a)-(d)");
    double cs_alpha = 1.1;
    std::uint64_t cs_seed = 0, cs_exp_n = 5000, cs_exp_r = 50, cs_stat = 40000, cs_scan = 400,
                  cs_bar_trials = 300;
    std::size_t cs_bar_m = 2000;
    int cs_threads = 1;
    merge.bind(sc_suite->add_option("--alpha", cs_alpha, "power-law exponent"), cs_alpha,
               "alpha");
    auto* cs_seed_opt = sc_suite->add_option("--seed", cs_seed, "master seed (required)");
    merge.bind(cs_seed_opt, cs_seed, "seed");
    merge.bind(sc_suite->add_option("--threads", cs_threads, "worker threads"), cs_threads,
               "threads");
    merge.bind(sc_suite->add_option("--expansion-n", cs_exp_n, "symbols per realization"),
               cs_exp_n, "expansion_n");
    merge.bind(sc_suite->add_option("--expansion-r", cs_exp_r, "realizations"), cs_exp_r,
               "expansion_r");
    merge.bind(sc_suite->add_option("--stat-trials", cs_stat, "stationarity trials"), cs_stat,
               "stat_trials");
    merge.bind(sc_suite->add_option("--scan-trials", cs_scan, "energy scan windows"), cs_scan,
               "scan_trials");
    merge.bind(sc_suite->add_option("--bar-m", cs_bar_m, "coded window length"), cs_bar_m,
               "bar_m");
    merge.bind(sc_suite->add_option("--bar-trials", cs_bar_trials, "bar-U trials"), cs_bar_trials,
               "bar_trials");

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto started = std::chrono::steady_clock::now();
    run_manifest m;
    std::filesystem::path dir = out_dir_from(out_flag);
    std::string manifest_name;

    auto require_seed = [&](CLI::Option* opt) {
        if (opt->count() == 0 && config_path.empty())
            throw CLI::ValidationError("--seed", "a seed is required; none given");
    };

    try {
        if (!config_path.empty()) {
            std::ifstream cf(config_path);
            if (!cf) throw CLI::ValidationError("--config", "cannot open " + config_path);
            json j = json::parse(cf);
            merge.apply(j);
        }

        std::string output_line;
        if (sc_check->parsed()) {
            m.command = "code-check";
            m.config = {{"code", cc_code}, {"require", cc_require}};
            cmd_code_check(cc_code, cc_require, m);
        } else if (sc_enc->parsed()) {
            m.command = "encode";
            m.config = {{"code", enc_code}, {"text", enc_text}, {"two_sided", enc_two}};
            cmd_encode(enc_code, enc_text, enc_two, m, output_line);
            std::cout << output_line << '\n';
        } else if (sc_dec->parsed()) {
            m.command = "decode";
            m.config = {{"code", dec_code}, {"text", dec_text}, {"two_sided", dec_two}};
            cmd_decode(dec_code, dec_text, dec_two, m, output_line);
            std::cout << output_line << '\n';
        } else if (sc_sample->parsed()) {
            require_seed(sm_seed_opt);
            m.command = "sample";
            m.config = {{"alpha", sm_alpha}, {"kmax", sm_kmax}, {"lo", sm_lo},
                        {"hi", sm_hi},       {"seed", sm_seed}, {"realization", sm_real}};
            cmd_sample(sm_alpha, sm_kmax, sm_lo, sm_hi, sm_seed, sm_real, dir, m);
        } else if (sc_rho->parsed()) {
            require_seed(rho_seed_opt);
            m.command = "stationary-mean";
            m.config = {{"model", rho_model},   {"code", rho_code}, {"u", rho_u},
                        {"trials", rho_trials}, {"seed", rho_seed}, {"shifts", rho_shifts},
                        {"alpha", rho_alpha}};
            cmd_stationary_mean(rho_model, rho_code, rho_u, rho_trials, rho_seed, rho_shifts, dir,
                                m, rho_alpha);
        } else if (sc_zipf->parsed()) {
            require_seed(zf_seed_opt);
            m.command = "zipf";
            m.config = {{"alpha", zf_alpha}, {"delta", zf_delta},   {"n", zf_ns},
                        {"seed", zf_seed},   {"trials", zf_trials}, {"mc_n", zf_mc_n}};
            cmd_zipf(zf_alpha, zf_delta, zf_ns, zf_seed, zf_trials, zf_mc_n, dir, m);
        } else if (sc_champ->parsed()) {
            m.command = "champernowne";
            m.config = {{"digits", ch_digits}, {"u", ch_u}};
            cmd_champernowne(ch_digits, ch_u, dir, m);
        } else if (sc_energy->parsed()) {
            require_seed(en_seed_opt);
            m.command = "energy";
            m.config = {{"alpha", en_alpha}, {"trials", en_trials}, {"seed", en_seed},
                        {"depth", en_dlo},   {"depth2", en_dhi},    {"min_support", en_support}};
            cmd_energy(en_alpha, en_trials, en_seed, en_dlo, en_dhi, en_support, dir, m);
        } else if (sc_entropy->parsed()) {
            m.command = "entropy";
            m.config = {{"check", et_check}, {"model", et_model},    {"code", et_code},
                        {"alpha", et_alpha}, {"k_small", et_ksmall}, {"n", et_n}};
            cmd_entropy(et_check, et_model, et_code, et_alpha, et_ksmall, et_n, dir, m);
        } else if (sc_suite->parsed()) {
            require_seed(cs_seed_opt);
            m.command = "conj-suite";
            // threads steer execution only, never results: left out of the
            // manifest so equal-seed runs are byte-identical at any count
            m.config = {{"alpha", cs_alpha},       {"seed", cs_seed},
                        {"expansion_n", cs_exp_n}, {"expansion_r", cs_exp_r},
                        {"stat_trials", cs_stat},  {"scan_trials", cs_scan},
                        {"bar_m", cs_bar_m},       {"bar_trials", cs_bar_trials}};
            cmd_conj_suite(cs_alpha, cs_seed, cs_threads, cs_exp_n, cs_exp_r, cs_stat, cs_scan,
                           cs_bar_m, cs_bar_trials, dir, m);
        }
        manifest_name = m.command + "-manifest.json";
        write_manifest(m, dir, manifest_name);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal fault: " << e.what() << '\n';
        return 4;
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cerr << m.command << ": " << (m.pass() ? "pass" : "FAIL") << ", wall_time_ms=" << elapsed
              << ", manifest=" << (dir / manifest_name).string() << '\n';
    return m.pass() ? 0 : 3;
}
