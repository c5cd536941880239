// Command-line front end: parse a presentation, run a computation, emit
// plain text, JSON or CSV. Every output row carries its provenance marker
// (exact / under-approximation at N / certified / checked); the tool never
// prints an unqualified claim about an infinite monoid.
//
// Exit codes: 0 success, 1 verification or consistency failure, 2 usage or
// parse error, 3 resource limit.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "puiseux/puiseux.hpp"

using namespace puiseux;

namespace {

struct PresentationOptions {
    std::string finite;
    std::string family;
    std::string ratio;
    std::uint32_t j = 1;
    std::uint32_t steps = 0;
    std::string json_text;
    std::string input_file;
};

struct GlobalOptions {
    std::string format = "plain";
    std::uint32_t truncation = 0; // 0 = use the presentation default
    std::uint64_t seed = 12345;
    SearchLimits limits;
};

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        unsigned long long parsed = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && parsed > 0) return parsed;
    }
    return fallback;
}

SearchLimits limits_from_env() {
    SearchLimits limits;
    limits.max_nodes = env_u64("PUISEUX_MAX_NODES", limits.max_nodes);
    limits.max_factorizations =
        env_u64("PUISEUX_MAX_FACTORIZATIONS", limits.max_factorizations);
    limits.max_scaled_target = Integer(env_u64(
        "PUISEUX_MAX_SCALED_TARGET", limits.max_scaled_target.convert_to<std::uint64_t>()));
    return limits;
}

void add_presentation_flags(CLI::App* cmd, PresentationOptions& opts) {
    cmd->add_option("--finite", opts.finite,
                    "comma-separated generators, e.g. 1/2,2/3");
    cmd->add_option("--family", opts.family,
                    "unit_fraction_primes | prime_complement | linear_over_prime | "
                    "prime_square_complement | geometric | constructed");
    cmd->add_option("--ratio", opts.ratio, "ratio for --family geometric, e.g. 2/3");
    cmd->add_option("--j", opts.j, "index for --family constructed");
    cmd->add_option("--steps", opts.steps, "extension steps for --family constructed");
    cmd->add_option("--json", opts.json_text, "inline presentation JSON");
    cmd->add_option("--input", opts.input_file, "path to a presentation JSON file");
}

Presentation resolve_presentation(const PresentationOptions& opts) {
    int sources = !opts.finite.empty() + !opts.family.empty() + !opts.json_text.empty() +
                  !opts.input_file.empty();
    if (sources != 1)
        throw parse_error("specify exactly one of --finite, --family, --json, --input");
    if (!opts.finite.empty()) {
        std::vector<PosRational> gens;
        std::stringstream ss(opts.finite);
        for (std::string item; std::getline(ss, item, ',');)
            gens.push_back(PosRational::parse(item));
        return Presentation::finite(std::move(gens));
    }
    if (!opts.family.empty()) {
        auto kind = family_from_name(opts.family);
        if (!kind) throw parse_error("unknown family \"" + opts.family + "\"");
        FamilySpec spec;
        if (*kind == Family::geometric) {
            if (opts.ratio.empty())
                throw parse_error("--family geometric needs --ratio");
            spec = FamilySpec::geometric(PosRational::parse(opts.ratio));
        } else if (*kind == Family::constructed) {
            spec = FamilySpec::constructed(opts.j);
        } else {
            spec = FamilySpec::primes(*kind);
        }
        std::uint32_t trunc = 20;
        if (*kind == Family::constructed && opts.steps > 0) trunc = 1 + 2 * opts.steps;
        return Presentation::family(std::move(spec), trunc);
    }
    if (!opts.json_text.empty()) return presentation_from_string(opts.json_text);
    std::ifstream in(opts.input_file);
    if (!in) throw parse_error("cannot open \"" + opts.input_file + "\"");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return presentation_from_string(buffer.str());
}

std::uint32_t effective_truncation(const GlobalOptions& global, const Presentation& p) {
    return global.truncation ? global.truncation : p.default_truncation();
}

std::string describe_source(const Presentation& p) {
    if (p.is_finite()) {
        std::string out = "finite {";
        for (std::size_t i = 0; i < p.generators().size(); ++i)
            out += (i ? ", " : "") + p.generators()[i].to_string();
        return out + "}";
    }
    std::string out = "family " + std::string(family_name(p.family_spec().kind));
    if (p.family_spec().kind == Family::geometric)
        out += " ratio " + p.family_spec().ratio.to_string();
    if (p.family_spec().kind == Family::constructed)
        out += " j=" + std::to_string(p.family_spec().index);
    return out;
}

std::string format_set(const std::vector<std::uint64_t>& values) {
    std::string out = "{";
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? ", " : "") + std::to_string(values[i]);
    return out + "}";
}

std::string format_factorization(const Factorization& z) {
    std::string out;
    for (std::size_t i = 0; i < z.exponents().size(); ++i) {
        if (z.exponents()[i] == 0) continue;
        if (!out.empty()) out += " + ";
        out += std::to_string(z.exponents()[i]) + "*(" + z.atoms()[i].to_string() + ")";
    }
    return out.empty() ? "(empty)" : out;
}

std::string status_text(UkStatus status, std::uint32_t truncation) {
    return status == UkStatus::exact
               ? "exact"
               : "under-approx at N=" + std::to_string(truncation);
}

// ---- classify ---------------------------------------------------------------

int cmd_classify(const PresentationOptions& popts, const GlobalOptions& global) {
    Presentation p = resolve_presentation(popts);
    std::uint32_t n = effective_truncation(global, p);
    MonoidDescriptor descriptor = describe(p, global.limits);
    MonoidFlags flags = classify(descriptor, n, global.limits);
    auto atoms = atom_list(descriptor, n, global.limits);
    auto stable = detect_stable_atoms(
        atoms, p.is_finite() ? std::nullopt : std::optional<FamilySpec>(p.family_spec()));

    if (global.format == "json") {
        Json out{{"presentation", to_json(p)},
                 {"check_level", n},
                 {"flags", to_json(flags)},
                 {"stable_atoms", to_json(stable)}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::string stable_text = stable.stable.certified_true()
                                  ? "certified present (numerator " +
                                        stable.stable_numerator->str() + ")"
                                  : stable.stable.certified_false()
                                        ? "certified none"
                                        : stable.stable.to_string();
    if (global.format == "csv") {
        std::cout << "flag,status\n";
        std::cout << "atomic," << flags.atomic.to_string() << "\n";
        std::cout << "bounded," << flags.bounded.to_string() << "\n";
        std::cout << "strongly_bounded," << flags.strongly_bounded.to_string() << "\n";
        std::cout << "primary," << flags.primary.to_string() << "\n";
        std::cout << "zero_limit_point," << flags.zero_limit_point.to_string() << "\n";
        std::cout << "stable_atoms," << stable_text << "\n";
        return 0;
    }
    std::cout << "presentation: " << describe_source(p) << " (checked at N=" << n << ")\n";
    std::cout << "  atomic:           " << flags.atomic.to_string() << "\n";
    std::cout << "  bounded:          " << flags.bounded.to_string() << "\n";
    std::cout << "  strongly bounded: " << flags.strongly_bounded.to_string() << "\n";
    std::cout << "  primary:          " << flags.primary.to_string() << "\n";
    std::cout << "  zero limit point: " << flags.zero_limit_point.to_string() << "\n";
    std::cout << "  stable atoms:     " << stable_text << "\n";
    return 0;
}

// ---- lengths / factor ---------------------------------------------------------

int cmd_lengths(const PresentationOptions& popts, const GlobalOptions& global,
                const std::string& x_text) {
    Presentation p = resolve_presentation(popts);
    PosRational x = PosRational::parse(x_text);
    std::uint32_t n = effective_truncation(global, p);
    MonoidDescriptor descriptor = describe(p, global.limits);
    auto atoms = atom_list(descriptor, n, global.limits);
    LengthSet ls = element_lengths(atoms, x, global.limits);
    ls.exact = p.is_finite();
    std::string status = ls.exact ? "exact" : "under-approx at N=" + std::to_string(n);

    if (global.format == "json") {
        Json out{{"x", x.to_string()},
                 {"lengths", ls.lengths},
                 {"member", !ls.lengths.empty()},
                 {"status", ls.exact ? Json("exact") : Json{{"under_approx_at", n}}}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (global.format == "csv") {
        std::cout << "x,lengths,status\n";
        std::string joined;
        for (std::size_t i = 0; i < ls.lengths.size(); ++i)
            joined += (i ? " " : "") + std::to_string(ls.lengths[i]);
        std::cout << x.to_string() << "," << joined << "," << status << "\n";
        return 0;
    }
    if (ls.lengths.empty()) {
        std::cout << x.to_string() << " is not a member of the "
                  << (p.is_finite() ? "monoid" : "truncated monoid") << "\n";
        return 0;
    }
    std::cout << "L(" << x.to_string() << ") = " << format_set(ls.lengths) << "   ["
              << status << "]\n";
    return 0;
}

int cmd_factor(const PresentationOptions& popts, const GlobalOptions& global,
               const std::string& x_text) {
    Presentation p = resolve_presentation(popts);
    PosRational x = PosRational::parse(x_text);
    std::uint32_t n = effective_truncation(global, p);
    MonoidDescriptor descriptor = describe(p, global.limits);
    auto atoms = atom_list(descriptor, n, global.limits);
    auto factorizations = enumerate_factorizations(atoms, x, global.limits);
    std::string status = p.is_finite() ? "exact" : "under-approx at N=" + std::to_string(n);

    if (global.format == "json") {
        Json zs = Json::array();
        for (const auto& z : factorizations) zs.push_back(to_json(z));
        Json out{{"x", x.to_string()},
                 {"member", !factorizations.empty()},
                 {"factorizations", std::move(zs)},
                 {"status", p.is_finite() ? Json("exact") : Json{{"under_approx_at", n}}}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (factorizations.empty()) {
        std::cout << x.to_string() << " is not a member of the "
                  << (p.is_finite() ? "monoid" : "truncated monoid") << "\n";
        return 0;
    }
    if (global.format == "csv") {
        std::cout << "length,factorization,status\n";
        for (const auto& z : factorizations)
            std::cout << z.length() << "," << format_factorization(z) << "," << status
                      << "\n";
        return 0;
    }
    std::cout << "Z(" << x.to_string() << "): " << factorizations.size()
              << " factorization(s)   [" << status << "]\n";
    for (const auto& z : factorizations)
        std::cout << "  |z| = " << z.length() << ":  " << format_factorization(z) << "\n";
    return 0;
}

// ---- uk-table -----------------------------------------------------------------

std::vector<UnionOfLengths> uk_columns(const MonoidDescriptor& descriptor,
                                       std::uint64_t k_max, std::uint32_t n,
                                       const SearchLimits& limits) {
    std::vector<UnionOfLengths> columns;
    bool exact_pipeline = !descriptor.presentation.is_finite() &&
                          descriptor.presentation.family_spec().kind ==
                              Family::prime_complement;
    for (std::uint64_t k = 1; k <= k_max; ++k)
        columns.push_back(exact_pipeline
                              ? exact_uk_prime_complement(k, limits)
                              : union_of_lengths_truncated(descriptor, k, n, limits));
    return columns;
}

int cmd_uk_table(const PresentationOptions& popts, const GlobalOptions& global,
                 std::uint64_t k_max) {
    Presentation p = resolve_presentation(popts);
    std::uint32_t n = effective_truncation(global, p);
    MonoidDescriptor descriptor = describe(p, global.limits);
    auto columns = uk_columns(descriptor, k_max, n, global.limits);

    if (global.format == "json") {
        Json cols = Json::array();
        for (const auto& c : columns) cols.push_back(to_json(c));
        std::cout << Json{{"presentation", to_json(p)}, {"columns", std::move(cols)}}.dump(2)
                  << "\n";
        return 0;
    }
    if (global.format == "csv") {
        // U_k is the k-th column; a status row follows the header; ragged
        // columns are padded with empty cells
        std::size_t height = 0;
        for (const auto& c : columns) height = std::max(height, c.lengths.size());
        for (std::size_t i = 0; i < columns.size(); ++i)
            std::cout << "k=" << columns[i].k << (i + 1 < columns.size() ? "," : "\n");
        for (std::size_t i = 0; i < columns.size(); ++i)
            std::cout << status_text(columns[i].status, columns[i].truncation)
                      << (i + 1 < columns.size() ? "," : "\n");
        for (std::size_t row = 0; row < height; ++row) {
            for (std::size_t i = 0; i < columns.size(); ++i) {
                if (row < columns[i].lengths.size()) std::cout << columns[i].lengths[row];
                std::cout << (i + 1 < columns.size() ? "," : "\n");
            }
        }
        return 0;
    }
    std::cout << "U_k for " << describe_source(p) << "\n";
    for (const auto& c : columns)
        std::cout << "  k=" << c.k << ": " << format_set(c.lengths) << "   ["
                  << status_text(c.status, c.truncation) << "]\n";
    return 0;
}

// ---- verify ---------------------------------------------------------------------

struct VerifyOptions {
    std::string family = "unit_fraction_primes";
    std::uint64_t k = 4;
    std::uint32_t chain = 10;
    std::size_t count = 25;
    std::uint64_t k_max = 8;
    std::uint32_t j = 1;
    std::uint32_t steps = 6;
    std::uint32_t n1 = 20;
    std::uint32_t n2 = 40;
    std::uint32_t random_finite = 0;
};

int verify_prop31(const VerifyOptions& v, const GlobalOptions& global) {
    auto kind = family_from_name(v.family);
    if (!kind) throw parse_error("unknown family \"" + v.family + "\"");
    auto certs = stable_atom_witnesses(FamilySpec::primes(*kind), v.count);
    std::uint64_t prev = 0;
    bool ok = true;
    for (const auto& cert : certs) {
        bool verified = cert.verify() && cert.z1.length() == 2 && cert.z2.length() > prev;
        prev = cert.z2.length();
        ok = ok && verified;
        if (global.format == "plain")
            std::cout << (verified ? "  ok  " : "  FAIL") << " x=" << cert.x.to_string()
                      << "  lengths {" << cert.z1.length() << ", " << cert.z2.length()
                      << "}  z2 = " << format_factorization(cert.z2) << "\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " prop31: " << certs.size()
              << " stable-class certificates, every pair re-evaluates to the same "
                 "element; lengths reach "
              << prev << "\n";
    return ok ? 0 : 1;
}

int verify_prop33(const VerifyOptions& v, const GlobalOptions& global) {
    bool ok = true;
    for (std::uint64_t k = 1; k <= v.k_max; ++k) {
        auto uk = exact_uk_prime_complement(k, global.limits);
        bool inside = true;
        for (std::uint64_t l : uk.lengths) inside = inside && (2 * l > k) && (l < 2 * k);
        ok = ok && inside;
        if (global.format == "plain")
            std::cout << "  U_" << k << " = " << format_set(uk.lengths)
                      << (inside ? "  inside (k/2, 2k)" : "  VIOLATION") << "\n";
    }
    if (v.random_finite > 0) {
        std::mt19937_64 rng(global.seed);
        std::uniform_int_distribution<std::size_t> size_dist(2, 5);
        std::uniform_int_distribution<std::uint64_t> num(1, 12), den(1, 6);
        for (std::uint32_t i = 0; i < v.random_finite; ++i) {
            std::set<PosRational, NumDenLess> seen;
            std::size_t want = size_dist(rng);
            while (seen.size() < want) seen.emplace(Integer(num(rng)), Integer(den(rng)));
            std::vector<PosRational> gens(seen.begin(), seen.end());
            auto descriptor = describe(Presentation::finite(gens), global.limits);
            auto atoms = atom_list(descriptor, 1, global.limits);
            PosRational q = atoms.front() * PosRational(99, 100);
            PosRational Q = atoms.back() * PosRational(101, 100);
            for (std::uint64_t k = 1; k <= 6; ++k) {
                PosRational bound = prop33_bound(q, Q, k);
                auto uk = union_of_lengths_truncated(descriptor, k, 1, global.limits);
                for (std::uint64_t l : uk.lengths)
                    ok = ok && PosRational(Integer(l)) < bound;
            }
        }
        std::cout << "  " << v.random_finite
                  << " random bounded finite presentations checked against kQ/q\n";
    }
    std::cout << (ok ? "PASS" : "FAIL")
              << " prop33: every U_k element strictly below kQ/q\n";
    return ok ? 0 : 1;
}

int verify_ex34(const VerifyOptions& v, const GlobalOptions& global,
                std::uint32_t truncation) {
    auto descriptor =
        describe(Presentation::family(FamilySpec::primes(Family::prime_complement)));
    std::uint32_t n = truncation ? truncation : 12;
    bool ok = true;
    for (std::uint64_t k = 1; k <= v.k_max; ++k) {
        auto exact = exact_uk_prime_complement(k, global.limits);
        auto brute = union_of_lengths_truncated(descriptor, k, n, global.limits);
        bool equal = exact.lengths == brute.lengths;
        ok = ok && equal;
        if (global.format == "plain")
            std::cout << "  k=" << k << ": exact " << format_set(exact.lengths)
                      << "  vs truncated(N=" << n << ") " << format_set(brute.lengths)
                      << (equal ? "  equal" : "  MISMATCH") << "\n";
    }
    std::cout << (ok ? "PASS" : "FAIL")
              << " ex34: exact pipeline equals brute-force truncation for k = 1.."
              << v.k_max << "\n";
    return ok ? 0 : 1;
}

int verify_ex37(const VerifyOptions& v, const GlobalOptions& global) {
    auto chain = geometric_witness_chain(v.k, v.chain);
    PosRational target(Integer(2 * v.k), Integer(3));
    bool ok = chain.size() == v.chain + 1;
    for (std::size_t t = 0; t < chain.size(); ++t) {
        bool step_ok = chain[t].length() == v.k + t && chain[t].value() == target;
        ok = ok && step_ok;
        if (global.format == "plain")
            std::cout << "  |z| = " << chain[t].length() << ":  "
                      << format_factorization(chain[t]) << "\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " ex37: " << chain.size()
              << " factorizations of " << target.to_string() << ", lengths " << v.k
              << ".." << (v.k + v.chain) << ", all values exact\n";
    return ok ? 0 : 1;
}

int verify_prop36(const VerifyOptions& v, const GlobalOptions& global) {
    ConstructionState state = make_construction(v.j);
    for (std::uint32_t i = 0; i < v.steps; ++i) state = extend(state);
    auto report = verify_conditions(state, global.limits);
    bool ok = report.all_pass();
    if (global.format == "plain") {
        std::cout << "  conditions: odd prime denominators "
                  << (report.denominators_odd_primes ? "ok" : "FAIL")
                  << ", max denominator at max generator "
                  << (report.max_denominator_at_max ? "ok" : "FAIL")
                  << ", minimal generation "
                  << (report.minimal_generation ? "ok" : "FAIL") << "\n";
        for (const auto& step : report.steps)
            std::cout << "    step " << step.step << ": q=" << step.q.str()
                      << "  b1+b2=n(a) " << (step.numerator_split ? "ok" : "FAIL")
                      << "  b1 outside " << (step.b1_outside ? "ok" : "FAIL")
                      << "  b2 outside " << (step.b2_outside ? "ok" : "FAIL") << "\n";
    }
    std::uint64_t prev = 0;
    for (std::size_t n = 1; n <= state.steps(); ++n) {
        auto cert = u2_witness(state, n);
        bool cert_ok = cert.verify() && cert.z2.length() > prev;
        prev = cert.z2.length();
        ok = ok && cert_ok;
        if (global.format == "plain")
            std::cout << "  witness " << n << ": x = " << cert.x.to_string()
                      << ", lengths {2, " << cert.z2.length() << "}"
                      << (cert_ok ? "" : "  FAIL") << "\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " prop36: j=" << v.j << ", " << v.steps
              << " steps, conditions (1)-(3) and " << state.steps()
              << " strictly longer U_2 witnesses\n";
    return ok ? 0 : 1;
}

int verify_thm41(const VerifyOptions& v, const GlobalOptions& global) {
    auto kind = family_from_name(v.family);
    if (!kind) throw parse_error("unknown family \"" + v.family + "\"");
    auto descriptor = describe(Presentation::family(FamilySpec::primes(*kind)));
    bool ok = true;
    for (std::uint64_t k = 1; k <= v.k_max; ++k) {
        auto report = stabilization_check(descriptor, k, v.n1, v.n2, global.limits);
        ok = ok && report.stable;
        if (global.format == "plain")
            std::cout << "  k=" << k << ": U_k(N=" << v.n1 << ") "
                      << format_set(report.at_low.lengths) << "  vs U_k(N=" << v.n2
                      << ") " << format_set(report.at_high.lengths)
                      << (report.stable ? "  stable" : "  NOT STABLE")
                      << "   [under-approx evidence]\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " thm41-stabilization: " << v.family
              << ", k <= " << v.k_max << ", truncations " << v.n1 << " and " << v.n2
              << " agree; containment held unconditionally\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"factorization invariants of Puiseux monoids: sets of lengths, "
                 "unions U_k, local elasticities, certified witness streams"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOptions global;
    global.limits = limits_from_env();
    app.add_option("--format", global.format, "plain | json | csv")
        ->check(CLI::IsMember({"plain", "json", "csv"}));
    app.add_option("-N,--truncation", global.truncation,
                   "truncation level (default: the presentation's own)");
    app.add_option("--seed", global.seed, "seed for randomized verification suites");
    app.add_option("--max-nodes", global.limits.max_nodes, "search node budget");
    app.add_option("--max-factorizations", global.limits.max_factorizations,
                   "factorization/candidate budget");
    std::uint64_t scaled_cap = 0;
    app.add_option("--max-scaled-target", scaled_cap, "DP scaled-target budget");

    PresentationOptions popts;
    std::string x_text;
    std::uint64_t k_max = 8;
    VerifyOptions vopts;
    std::string suite;

    CLI::App* classify_cmd = app.add_subcommand("classify", "resolve and print the flags");
    add_presentation_flags(classify_cmd, popts);

    CLI::App* lengths_cmd = app.add_subcommand("lengths", "set of lengths L(x)");
    add_presentation_flags(lengths_cmd, popts);
    lengths_cmd->add_option("--x", x_text, "element, e.g. 7/6")->required();

    CLI::App* factor_cmd = app.add_subcommand("factor", "all factorizations Z(x)");
    add_presentation_flags(factor_cmd, popts);
    factor_cmd->add_option("--x", x_text, "element, e.g. 7/6")->required();

    CLI::App* table_cmd = app.add_subcommand("uk-table", "U_k as the k-th column");
    add_presentation_flags(table_cmd, popts);
    table_cmd->add_option("--kmax", k_max, "largest k")->required();

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "property suites: prop31 prop33 prop36 ex34 ex37 thm41-stabilization");
    verify_cmd
        ->add_option("suite", suite,
                     "prop31 | prop33 | prop36 | ex34 | ex37 | thm41-stabilization")
        ->required();
    verify_cmd->add_option("--family", vopts.family, "family for prop31/thm41");
    verify_cmd->add_option("--k", vopts.k, "k for ex37");
    verify_cmd->add_option("--chain", vopts.chain, "rewrite count for ex37");
    verify_cmd->add_option("--count", vopts.count, "certificate count for prop31");
    verify_cmd->add_option("--kmax", vopts.k_max, "largest k for prop33/ex34/thm41");
    verify_cmd->add_option("--j", vopts.j, "construction index for prop36");
    verify_cmd->add_option("--steps", vopts.steps, "extension steps for prop36");
    verify_cmd->add_option("--n1", vopts.n1, "lower truncation for thm41");
    verify_cmd->add_option("--n2", vopts.n2, "higher truncation for thm41");
    verify_cmd->add_option("--random-finite", vopts.random_finite,
                           "additionally check this many random finite presentations "
                           "(prop33)");

    CLI11_PARSE(app, argc, argv);
    if (scaled_cap > 0) global.limits.max_scaled_target = Integer(scaled_cap);

    try {
        if (classify_cmd->parsed()) return cmd_classify(popts, global);
        if (lengths_cmd->parsed()) return cmd_lengths(popts, global, x_text);
        if (factor_cmd->parsed()) return cmd_factor(popts, global, x_text);
        if (table_cmd->parsed()) return cmd_uk_table(popts, global, k_max);
        if (verify_cmd->parsed()) {
            if (suite == "prop31") {
                vopts.family = verify_cmd->count("--family") ? vopts.family
                                                             : "unit_fraction_primes";
                return verify_prop31(vopts, global);
            }
            if (suite == "prop33") {
                if (!verify_cmd->count("--kmax")) vopts.k_max = 15;
                return verify_prop33(vopts, global);
            }
            if (suite == "ex34") return verify_ex34(vopts, global, global.truncation);
            if (suite == "ex37") return verify_ex37(vopts, global);
            if (suite == "prop36") return verify_prop36(vopts, global);
            if (suite == "thm41-stabilization") {
                if (!verify_cmd->count("--family")) vopts.family = "linear_over_prime";
                if (!verify_cmd->count("--kmax")) vopts.k_max = 4;
                return verify_thm41(vopts, global);
            }
            throw parse_error("unknown suite \"" + suite + "\"");
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const consistency_error& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
