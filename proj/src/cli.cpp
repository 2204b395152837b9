#include <lidx/cli.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

namespace lidx {

namespace {

using nlohmann::json;

// Command-line misuse discovered after CLI11 parsing (malformed compound
// values and the like); mapped to exit code 2.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

std::string fmt_vec(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s + ")";
}

std::string quote_csv(const std::string& field) {
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

json witness_to_json(const CollinearityWitness& w) {
    return json{{"modulus", w.modulus},
                {"levels", w.levels},
                {"lambda", w.lambda},
                {"witness", w.witness}};
}

CollinearityWitness witness_from_json(const json& j) {
    CollinearityWitness w;
    w.modulus = j.at("modulus").get<Int>();
    w.levels = j.at("levels").get<std::vector<int>>();
    w.lambda = j.at("lambda").get<Int>();
    w.witness = j.at("witness").get<Vec>();
    return w;
}

} // namespace

CodeSpecFile spec_from_design(const UniformDesign& design) {
    CodeSpecFile spec;
    spec.primes = design.code.primes.primes;
    spec.length = design.code.length;
    for (const LinearCode& level : design.code.level_codes)
        spec.level_generators.push_back(level.generators);
    SpecDesignInfo info;
    info.kind = design.kind;
    info.predicted_gain_db = design.predicted_gain_db;
    info.copies = design.copies;
    info.decomposition = design.decomposition;
    info.level_witnesses = design.level_witnesses;
    info.certificate = design.certificate;
    spec.design = std::move(info);
    return spec;
}

std::string spec_to_json(const CodeSpecFile& spec) {
    json j;
    j["format"] = "crt-index-code-spec";
    j["version"] = 1;
    j["primes"] = spec.primes;
    j["n"] = spec.length;
    json levels = json::array();
    for (std::size_t i = 0; i < spec.primes.size(); ++i)
        levels.push_back(json{{"prime", spec.primes[i]}, {"generators", spec.level_generators[i]}});
    j["levels"] = levels;
    if (spec.design) {
        const SpecDesignInfo& d = *spec.design;
        json dj;
        dj["kind"] = to_string(d.kind);
        dj["predicted_gain_db"] = d.predicted_gain_db;
        dj["copies"] = d.copies;
        dj["decomposition"] = d.decomposition;
        json ws = json::array();
        for (const CollinearityWitness& w : d.level_witnesses) ws.push_back(witness_to_json(w));
        dj["level_witnesses"] = ws;
        if (d.certificate) {
            const CollinearityCertificate& c = *d.certificate;
            json cj;
            cj["pass"] = c.pass;
            cj["predicted_gain_db"] = c.predicted_gain_db;
            json cw = json::array();
            for (const CollinearityWitness& w : c.witnesses) cw.push_back(witness_to_json(w));
            cj["witnesses"] = cw;
            json cf = json::array();
            for (SubsetMask mask : c.failures)
                cf.push_back(mask_to_levels(mask, static_cast<int>(spec.primes.size())));
            cj["failures"] = cf;
            dj["certificate"] = cj;
        }
        j["design"] = dj;
    }
    return j.dump(2) + "\n";
}

CodeSpecFile spec_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_object() || j.value("format", "") != "crt-index-code-spec")
        throw std::invalid_argument("spec: missing format tag 'crt-index-code-spec'");
    if (j.at("version").get<int>() != 1)
        throw std::invalid_argument("spec: unsupported version");

    CodeSpecFile spec;
    spec.primes = j.at("primes").get<std::vector<Int>>();
    spec.length = j.at("n").get<int>();
    if (spec.length < 1) throw std::invalid_argument("spec: n must be positive");
    const json& levels = j.at("levels");
    if (!levels.is_array() || levels.size() != spec.primes.size())
        throw std::invalid_argument("spec: one level entry per prime required");
    for (std::size_t i = 0; i < spec.primes.size(); ++i) {
        const json& level = levels[i];
        if (level.at("prime").get<Int>() != spec.primes[i])
            throw std::invalid_argument("spec: level prime does not match the primes list");
        Mat gens = level.at("generators").get<Mat>();
        for (const Vec& row : gens) {
            if (static_cast<int>(row.size()) != spec.length)
                throw std::invalid_argument("spec: generator row width must equal n");
            for (Int v : row)
                if (v < 0 || v >= spec.primes[i])
                    throw std::invalid_argument(
                        "spec: generator entries must be reduced into [0, prime)");
        }
        spec.level_generators.push_back(std::move(gens));
    }

    if (j.contains("design")) {
        const json& dj = j.at("design");
        SpecDesignInfo info;
        info.kind = design_kind_from_string(dj.at("kind").get<std::string>());
        info.predicted_gain_db = dj.at("predicted_gain_db").get<double>();
        info.copies = dj.value("copies", 1);
        info.decomposition = dj.value("decomposition", Vec{});
        if (dj.contains("level_witnesses"))
            for (const json& wj : dj.at("level_witnesses"))
                info.level_witnesses.push_back(witness_from_json(wj));
        if (dj.contains("certificate")) {
            const json& cj = dj.at("certificate");
            CollinearityCertificate cert;
            cert.primes = spec.primes;
            cert.decomposition = info.decomposition;
            cert.pass = cj.at("pass").get<bool>();
            cert.predicted_gain_db = cj.at("predicted_gain_db").get<double>();
            for (const json& wj : cj.at("witnesses"))
                cert.witnesses.push_back(witness_from_json(wj));
            for (const json& fj : cj.at("failures"))
                cert.failures.push_back(levels_to_mask(fj.get<std::vector<int>>(),
                                                       static_cast<int>(spec.primes.size())));
            info.certificate = std::move(cert);
        }
        spec.design = std::move(info);
    }
    return spec;
}

void save_spec(const CodeSpecFile& spec, const std::string& path) {
    write_text(path, spec_to_json(spec));
}

CodeSpecFile load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return spec_from_json(buffer.str());
}

CrtIndexCode instantiate_spec(const CodeSpecFile& spec, const Caps& caps) {
    return make_crt_index_code(spec.primes, spec.level_generators, spec.length, caps);
}

std::string render_surd(Int sq) {
    if (sq < 1) throw std::invalid_argument("render_surd: argument must be positive");
    Int square = 1, free = 1, rest = sq;
    for (Int d = 2; d * d <= rest; ++d) {
        int count = 0;
        while (rest % d == 0) {
            rest /= d;
            ++count;
        }
        for (int i = 0; i < count / 2; ++i) square = checked_mul(square, d);
        if (count % 2) free = checked_mul(free, d);
    }
    free = checked_mul(free, rest);
    if (free == 1) return std::to_string(square);
    const std::string root = "sqrt(" + std::to_string(free) + ")";
    return square == 1 ? root : std::to_string(square) + "*" + root;
}

std::string gain_report_csv(const GainReport& report) {
    const int r = static_cast<int>(report.primes.size());
    std::string out =
        "index_set,d_sq,min_distance,min_distance_surd,rate_bits_per_dim,gain_db_per_bit_per_dim\n";
    for (const GainRow& row : report.rows) {
        out += quote_csv(subset_to_string(row.mask, r)) + ',';
        out += std::to_string(row.d_sq) + ',';
        out += fmt_double(std::sqrt(static_cast<double>(row.d_sq))) + ',';
        out += render_surd(row.d_sq) + ',';
        out += fmt_double(row.rate_bits_per_dim) + ',';
        out += fmt_double(row.gain_db) + '\n';
    }
    return out;
}

std::string gain_report_json(const GainReport& report) {
    const int r = static_cast<int>(report.primes.size());
    json j;
    j["n"] = report.length;
    j["q"] = report.q;
    j["primes"] = report.primes;
    j["ranks"] = report.ranks;
    j["d0_sq"] = report.d0_sq;
    j["level_rates"] = report.level_rates;
    j["total_rate"] = report.total_rate;
    json rows = json::array();
    for (const GainRow& row : report.rows)
        rows.push_back(json{{"levels", row.levels},
                            {"subset", subset_to_string(row.mask, r)},
                            {"d_sq", row.d_sq},
                            {"min_distance", std::sqrt(static_cast<double>(row.d_sq))},
                            {"min_distance_surd", render_surd(row.d_sq)},
                            {"rate_bits_per_dim", row.rate_bits_per_dim},
                            {"gain_db", row.gain_db}});
    j["rows"] = rows;
    if (report.overall_gain_db) j["overall_gain_db"] = *report.overall_gain_db;
    if (report.uniform) j["uniform"] = *report.uniform;
    if (report.equal_rank_bound_db) j["equal_rank_bound_db"] = *report.equal_rank_bound_db;
    return j.dump(2) + "\n";
}

std::string curves_csv(const std::vector<SerCurve>& curves, int levels) {
    std::string out = "subset,snr_db,sigma2,trials,errors,ser,stderr,theory\n";
    for (const SerCurve& curve : curves) {
        const std::string subset = quote_csv(subset_to_string(curve.known, levels));
        for (const SerPoint& p : curve.points) {
            out += subset + ',';
            out += fmt_double(p.snr_db) + ',';
            out += fmt_double(p.sigma2) + ',';
            out += std::to_string(p.trials) + ',';
            out += std::to_string(p.errors) + ',';
            out += fmt_double(p.ser) + ',';
            out += fmt_double(p.stderr_) + ',';
            if (p.theory) out += fmt_double(*p.theory);
            out += '\n';
        }
    }
    return out;
}

std::string curves_json(const std::vector<SerCurve>& curves, int levels) {
    json arr = json::array();
    for (const SerCurve& curve : curves) {
        json points = json::array();
        for (const SerPoint& p : curve.points) {
            json pj{{"snr_db", p.snr_db}, {"sigma2", p.sigma2},   {"trials", p.trials},
                    {"errors", p.errors}, {"ser", p.ser},         {"stderr", p.stderr_}};
            if (p.theory) pj["theory"] = *p.theory;
            points.push_back(pj);
        }
        arr.push_back(json{{"subset", subset_to_string(curve.known, levels)},
                           {"known_levels", curve.levels},
                           {"d_sq", curve.d_sq},
                           {"kissing", curve.kissing},
                           {"points", points}});
    }
    return arr.dump(2) + "\n";
}

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    write_text(out_path, text);
    std::cout << "wrote " << out_path << "\n";
}

std::vector<int> parse_level_list(const std::string& token) {
    std::vector<int> levels;
    std::size_t pos = 0;
    while (pos < token.size()) {
        std::size_t next = token.find(',', pos);
        if (next == std::string::npos) next = token.size();
        const std::string part = token.substr(pos, next - pos);
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(part, &used);
        } catch (const std::exception&) {
            throw usage_error("malformed level list '" + token + "'");
        }
        if (used != part.size()) throw usage_error("malformed level list '" + token + "'");
        levels.push_back(value);
        pos = next + 1;
    }
    if (levels.empty()) throw usage_error("empty level list");
    return levels;
}

SnrGrid parse_snr(const std::string& text) {
    std::vector<double> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(':', pos);
        if (next == std::string::npos) next = text.size();
        const std::string part = text.substr(pos, next - pos);
        std::size_t used = 0;
        try {
            parts.push_back(std::stod(part, &used));
        } catch (const std::exception&) {
            throw usage_error("malformed --snr '" + text + "' (want start:stop:step)");
        }
        if (used != part.size())
            throw usage_error("malformed --snr '" + text + "' (want start:stop:step)");
        pos = next + 1;
        if (next == text.size()) break;
    }
    if (parts.size() == 1) return {parts[0], parts[0], 1.0};
    if (parts.size() != 3 || parts[2] <= 0 || parts[1] < parts[0])
        throw usage_error("malformed --snr '" + text + "' (want start:stop:step)");
    return {parts[0], parts[1], parts[2]};
}

void print_witness(const CollinearityWitness& w) {
    std::cout << "  P=" << w.modulus << " levels " << (w.levels.empty() ? "-" : "") ;
    for (std::size_t i = 0; i < w.levels.size(); ++i)
        std::cout << (i ? "," : "") << w.levels[i];
    std::cout << ": lambda=" << w.lambda << " b=" << fmt_vec(w.witness) << "\n";
}

struct CanonicalArgs {
    std::vector<Int> primes;
    int n = 0;
    int k = 0;
    int shared = 1;
    std::string out;
};

struct SosArgs {
    std::vector<Int> primes;
    int n_squares = 0;
    int copies = 1;
    int index = 0;
    bool certify = false;
    std::string out;
};

struct AnalyzeArgs {
    std::string spec;
    std::string format = "csv";
    std::string out;
};

struct VerifyArgs {
    std::string spec;
    long long samples = 10000;
};

struct SimulateArgs {
    std::string spec;
    std::string snr;
    long long trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> subsets;
    bool with_theory = false;
    std::string format = "csv";
    std::string out;
};

int run_design_canonical(const CanonicalArgs& a, const Caps& caps) {
    const UniformDesign design = design_canonical(a.primes, a.n, a.k, a.shared, {}, caps);
    std::cout << "canonical design: n=" << a.n << " k=" << a.k << " shared index " << a.shared
              << "\npredicted gain " << fmt_double(design.predicted_gain_db)
              << " dB/bit/dim (confirmed uniform)\n";
    if (!a.out.empty()) {
        save_spec(spec_from_design(design), a.out);
        std::cout << "wrote " << a.out << "\n";
    }
    return 0;
}

int run_design_sos(const SosArgs& a, const Caps& caps) {
    SosDesignResult result = design_sos(a.primes, a.n_squares, caps);
    for (const UniformDesign& d : result.designs) {
        std::cout << "design: decomposition " << fmt_vec(d.decomposition) << " gain "
                  << fmt_double(d.predicted_gain_db) << " dB/bit/dim\n";
        for (const CollinearityWitness& w : d.level_witnesses) print_witness(w);
    }
    for (const RejectedDecomposition& rej : result.rejections) {
        std::cout << "rejected: decomposition " << fmt_vec(rej.decomposition);
        if (rej.failing_level != 0)
            std::cout << " at level " << rej.failing_level << " (p=" << rej.failing_prime << ")";
        std::cout << ": " << rej.reason << "\n";
    }
    if (result.designs.empty()) {
        std::cout << "no feasible design\n";
        return 1;
    }
    if (a.index < 0 || a.index >= static_cast<int>(result.designs.size()))
        throw usage_error("--index out of range (found " +
                          std::to_string(result.designs.size()) + " designs)");

    UniformDesign chosen = std::move(result.designs[a.index]);
    if (a.certify) {
        CollinearityCertificate cert =
            certify_collinearity(a.primes, chosen.decomposition, caps);
        std::cout << "certificate for " << fmt_vec(chosen.decomposition) << ": "
                  << (cert.pass ? "pass" : "FAIL") << "\n";
        for (const CollinearityWitness& w : cert.witnesses) print_witness(w);
        for (SubsetMask mask : cert.failures)
            std::cout << "  no witness for subset "
                      << subset_to_string(mask, static_cast<int>(a.primes.size())) << "\n";
        chosen.certificate = cert;
        if (!cert.pass) return 1;
    }
    if (a.copies > 1) {
        chosen = lift_cartesian(chosen, a.copies, caps);
        std::cout << "lifted to " << a.copies << " copies: n=" << chosen.code.length
                  << " gain unchanged\n";
    }
    if (!a.out.empty()) {
        save_spec(spec_from_design(chosen), a.out);
        std::cout << "wrote " << a.out << " (decomposition " << fmt_vec(chosen.decomposition)
                  << ")\n";
    }
    return 0;
}

int run_analyze(const AnalyzeArgs& a, const Caps& caps) {
    const CodeSpecFile spec = load_spec(a.spec);
    const CrtIndexCode code = instantiate_spec(spec, caps);
    const GainReport report = gain_report(code, caps);
    if (code.levels() < 2)
        std::cerr << "warning: single level code has no proper subsets; rates only\n";
    emit(a.format == "csv" ? gain_report_csv(report) : gain_report_json(report), a.out);
    return 0;
}

int run_verify(const VerifyArgs& a, const Caps& caps) {
    const CodeSpecFile spec = load_spec(a.spec);
    const CrtIndexCode code = instantiate_spec(spec, caps);
    const int r = code.levels();
    const Int q = code.primes.q;
    bool all_ok = true;
    const auto check = [&](bool ok, const std::string& name) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
        all_ok = all_ok && ok;
    };

    const VolumeIdentityReport volumes = verify_volume_identities(code, caps);
    check(volumes.pass, "sublattice volume and distance-sandwich identities");

    std::optional<GainReport> report;
    bool ranks_positive = true;
    for (int k : code.level_ranks) ranks_positive = ranks_positive && k > 0;
    if (ranks_positive && r >= 2) report = gain_report(code, caps);

    if (report && report->equal_rank_bound_db)
        check(*report->overall_gain_db <= *report->equal_rank_bound_db + 1e-9,
              "equal-rank gain bound");
    else
        std::cout << "[skip] equal-rank gain bound (ranks differ or single level)\n";

    // Level-map invertibility: exhaustive when the codebook is materialized,
    // sampled round trips otherwise.
    if (code.lattice.lift->book) {
        Mat words;
        words.reserve(static_cast<std::size_t>(code.cardinality));
        for_each_masked_word(code, (SubsetMask(1) << r) - 1,
                             [&](const Vec& w) { words.push_back(w); });
        std::sort(words.begin(), words.end());
        const bool distinct = std::adjacent_find(words.begin(), words.end()) == words.end();
        check(distinct && static_cast<Int>(words.size()) == code.cardinality,
              "level map reaches every codeword exactly once (exhaustive)");
    } else {
        std::mt19937_64 rng(0x76657269667921ull);
        bool ok = true;
        for (long long s = 0; s < a.samples && ok; ++s) {
            std::vector<Vec> words;
            for (int j = 0; j < r; ++j) {
                const auto& book = code.level_books[j].words;
                words.push_back(book[rng() % book.size()]);
            }
            ok = decode_exact(code, encode(code, words)) == words;
        }
        check(ok, "level map round trip (" + std::to_string(a.samples) + " samples)");
    }

    if (spec.design) {
        const SpecDesignInfo& d = *spec.design;
        if (report)
            check(report->uniform.value_or(false) &&
                      std::abs(*report->overall_gain_db - d.predicted_gain_db) <= 1e-9,
                  "measured gain is uniform at the designed value");

        if (d.kind == DesignKind::sum_of_squares || d.kind == DesignKind::cartesian_lift) {
            bool levels_ok = true;
            for (int j = 0; j < r; ++j) {
                Int best = checked_mul(code.primes.primes[j], code.primes.primes[j]);
                for (const Vec& w : code.level_books[j].words) {
                    Int nsq = 0;
                    for (Int v : w) {
                        const Int c = 2 * v > code.primes.primes[j] ? v - code.primes.primes[j]
                                                                    : v;
                        nsq += c * c;
                    }
                    if (nsq != 0 && nsq < best) best = nsq;
                }
                levels_ok = levels_ok && best == code.primes.primes[j];
            }
            check(levels_ok, "every level lattice has squared minimum distance p_j");
            check(code.d0_sq == q, "combined lattice has squared minimum distance q");

            bool witnesses_ok = !d.level_witnesses.empty();
            for (const CollinearityWitness& w : d.level_witnesses) {
                Int nsq = 0;
                for (Int v : w.witness) nsq += checked_mul(v, v);
                bool congruent = w.witness.size() == d.decomposition.size();
                for (std::size_t i = 0; congruent && i < w.witness.size(); ++i)
                    congruent = mod_floor(checked_mul(w.lambda, w.witness[i]) -
                                              d.decomposition[i],
                                          w.modulus) == 0;
                witnesses_ok = witnesses_ok && nsq == w.modulus &&
                               gcd_nonneg(w.lambda, w.modulus) == 1 && congruent;
            }
            check(witnesses_ok, "stored level witnesses solve their congruences");
        }

        if (d.certificate) {
            const CollinearityCertificate recomputed =
                certify_collinearity(spec.primes, d.decomposition, caps);
            check(recomputed.pass == d.certificate->pass &&
                      recomputed.failures == d.certificate->failures,
                  "collinearity certificate reproduces");
        }
    }

    std::cout << (all_ok ? "all checks passed" : "CHECKS FAILED") << "\n";
    return all_ok ? 0 : 1;
}

int run_simulate(const SimulateArgs& a, const Caps& caps) {
    const CodeSpecFile spec = load_spec(a.spec);
    const CrtIndexCode code = instantiate_spec(spec, caps);
    ChannelConfig cfg;
    cfg.grid = parse_snr(a.snr);
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    cfg.with_theory = a.with_theory;

    bool all = a.subsets.empty();
    for (const std::string& token : a.subsets) {
        if (token == "all") {
            all = true;
        } else if (token == "none" || token == "{}") {
            cfg.subsets.push_back(0);
        } else {
            try {
                cfg.subsets.push_back(levels_to_mask(parse_level_list(token), code.levels()));
            } catch (const std::invalid_argument& e) {
                throw usage_error(e.what());
            }
        }
    }
    if (all) cfg.subsets.clear();

    const std::vector<SerCurve> curves = monte_carlo(code, cfg, caps);
    emit(a.format == "csv" ? curves_csv(curves, code.levels())
                           : curves_json(curves, code.levels()),
         a.out);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"CRT lattice index codes: design, analysis, verification, simulation"};
    app.name("lidx");
    app.require_subcommand(1);

    Caps caps = default_caps();
    app.add_option("--cap-sos-target", caps.sum_of_squares_max_target,
                   "largest target for square decompositions")
        ->capture_default_str();
    app.add_option("--cap-collinear-modulus", caps.scalar_collinear_max_modulus,
                   "largest modulus for collinear witness scans")
        ->capture_default_str();
    app.add_option("--cap-codebook-words", caps.codebook_max_words,
                   "largest codeword count any enumeration may visit")
        ->capture_default_str();
    app.add_option("--cap-materialize-words", caps.codebook_materialize_limit,
                   "largest codebook kept in memory")
        ->capture_default_str();
    app.add_option("--cap-search-nodes", caps.search_max_nodes,
                   "node budget for lattice point searches")
        ->capture_default_str();

    CanonicalArgs can;
    SosArgs sos;
    AnalyzeArgs ana;
    VerifyArgs ver;
    SimulateArgs sim;

    CLI::App* design = app.add_subcommand("design", "construct uniform-gain codes");
    design->require_subcommand(1);
    design->fallthrough();

    CLI::App* canonical = design->add_subcommand(
        "canonical", "level codes spanned by shared canonical unit vectors");
    canonical->fallthrough();
    canonical->add_option("--primes", can.primes, "comma-separated distinct primes")
        ->required()
        ->delimiter(',');
    canonical->add_option("--n", can.n, "code length")->required();
    canonical->add_option("--k", can.k, "rank per level (k < n)")->required();
    canonical->add_option("--shared", can.shared, "shared canonical index (1-based)")
        ->capture_default_str();
    canonical->add_option("-o,--output", can.out, "write the code spec JSON here");

    CLI::App* sos_cmd = design->add_subcommand(
        "sos", "rank-1 codes from sum-of-squares decompositions of the prime product");
    sos_cmd->fallthrough();
    sos_cmd->add_option("--primes", sos.primes, "comma-separated distinct primes")
        ->required()
        ->delimiter(',');
    sos_cmd->add_option("--N", sos.n_squares, "number of squares (1-8)")->required();
    sos_cmd->add_option("--m", sos.copies, "Cartesian copies of the chosen design")
        ->capture_default_str();
    sos_cmd->add_option("--index", sos.index, "which produced design to write")
        ->capture_default_str();
    sos_cmd->add_flag("--certify", sos.certify,
                      "search witnesses for every prime-subset product and embed them");
    sos_cmd->add_option("-o,--output", sos.out, "write the code spec JSON here");

    CLI::App* analyze = app.add_subcommand("analyze", "side information gain table of a spec");
    analyze->fallthrough();
    analyze->add_option("--spec", ana.spec, "code spec JSON file")->required();
    analyze->add_option("--format", ana.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    analyze->add_option("-o,--output", ana.out, "write the table here instead of stdout");

    CLI::App* verify = app.add_subcommand("verify", "check the structural identities of a spec");
    verify->fallthrough();
    verify->add_option("--spec", ver.spec, "code spec JSON file")->required();
    verify->add_option("--samples", ver.samples,
                       "round-trip samples when the code is too large to enumerate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo symbol error rates over the AWGN channel");
    simulate->fallthrough();
    simulate->add_option("--spec", sim.spec, "code spec JSON file")->required();
    simulate->add_option("--snr", sim.snr, "SNR grid in dB: start:stop:step")->required();
    simulate->add_option("--trials", sim.trials, "trials per point")
        ->required()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "master RNG seed")->required();
    simulate->add_option("--subsets", sim.subsets,
                         "curves to run: 'all', 'none' (no side information), or level lists "
                         "like 1,3 (repeatable)");
    simulate->add_flag("--emit-theory", sim.with_theory,
                       "append the union-bound approximation column");
    simulate->add_option("--format", sim.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    simulate->add_option("-o,--output", sim.out, "write the curves here instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (design->got_subcommand(canonical)) return run_design_canonical(can, caps);
        if (design->got_subcommand(sos_cmd)) return run_design_sos(sos, caps);
        if (app.got_subcommand(analyze)) return run_analyze(ana, caps);
        if (app.got_subcommand(verify)) return run_verify(ver, caps);
        if (app.got_subcommand(simulate)) return run_simulate(sim, caps);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace lidx
