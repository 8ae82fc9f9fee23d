// Command-line front end: map documents in, canonical documents and certificates out.
//
// Exit codes: 0 success/valid, 1 invalid certificate, 2 parse error,
// 3 domain error, 4 not implemented.

#include <CLI11.hpp>

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pcgroup/commutator.hpp"
#include "pcgroup/decomp.hpp"
#include "pcgroup/io.hpp"
#include "pcgroup/pcmap.hpp"
#include "pcgroup/saf.hpp"
#include "pcgroup/thompson.hpp"
#include "pcgroup/witness.hpp"

using namespace pcgroup;

namespace {

struct Options {
    std::string field;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << text;
}

FieldSpec default_field(const Options& o) {
    if (!o.field.empty()) return parse_field(o.field);
    if (const char* env = std::getenv("PCGROUP_FIELD")) return parse_field(env);
    return {};
}

PwMap load_map(const std::string& path, const Options& o) { return parse_map(read_input(path), default_field(o)); }

GroupId group_arg(const std::string& name) {
    auto G = parse_group(name);
    if (!G) throw ParseError("unknown group '" + name + "'");
    return *G;
}

std::string join(const std::vector<Scalar>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].str();
    return s;
}

std::string join(const std::vector<Interval>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " u " : "") + ("[" + xs[i].lo.str() + ", " + xs[i].hi.str() + ")");
    return s.empty() ? "empty" : s;
}

std::string analysis_text(const PwMap& f) {
    Analysis a = analyze(f);
    std::ostringstream out;
    out << "pieces: " << a.piece_count << "\n";
    out << "supp: " << join(a.supp) << "\n";
    out << "fix: " << join(a.fix) << "\n";
    out << "disc: " << join(a.disc) << "\n";
    out << "discontinuities: " << a.discontinuity_count << "\n";
    out << "slopes: " << join(a.slopes) << "\n";
    Order2 o = order2_class(f);
    out << "order2: " << (o == Order2::Identity ? "identity" : o == Order2::Involution ? "involution" : "other") << "\n";
    out << "groups:";
    for (const auto& G : {GroupId::iet(), GroupId::fiet(), GroupId::aiet(), GroupId::faiet(), GroupId::pl_interval(),
                          GroupId::pl_circle()})
        if (is_member(f, G)) out << " " << G.name();
    out << "\n";
    return out.str();
}

std::string verify_one(const std::string& path, bool& valid) {
    Witness w;
    try {
        w = parse_witness(read_input(path));
    } catch (const DomainError& e) {
        valid = false;
        return "INVALID " + path + ": " + e.what();
    }
    Verdict v = verify_witness(w);
    valid = v.valid;
    return (v.valid ? "VALID " + path : "INVALID " + path + ": " + v.reason);
}

int run(int argc, char** argv) {
    CLI::App app{"Exact computations with piecewise-affine bijections of [0,1)"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--field", o.field, "default field, Q or Q(sqrt d); overrides PCGROUP_FIELD");
    app.add_option("--seed", o.seed, "seed for randomized searches");
    app.add_option("--jobs", o.jobs, "worker threads for batch verification")->check(CLI::PositiveNumber);
    int code = 0;

    std::string in1, in2, out_path;
    auto* canon = app.add_subcommand("canon", "canonical form of a map");
    canon->add_option("map", in1)->required();
    canon->callback([&] { std::cout << print_map(load_map(in1, o)); });

    auto* comp = app.add_subcommand("compose", "f o g");
    comp->add_option("f", in1)->required();
    comp->add_option("g", in2)->required();
    comp->callback([&] { std::cout << print_map(compose(load_map(in1, o), load_map(in2, o))); });

    auto* inv = app.add_subcommand("inv", "inverse");
    inv->add_option("map", in1)->required();
    inv->callback([&] { std::cout << print_map(load_map(in1, o).inverse()); });

    auto* conj = app.add_subcommand("conj", "h f h^-1");
    conj->add_option("f", in1)->required();
    conj->add_option("conjugator", in2)->required();
    conj->callback([&] { std::cout << print_map(conjugate(load_map(in1, o), load_map(in2, o))); });

    auto* comm = app.add_subcommand("comm", "[a,b] = a b a^-1 b^-1");
    comm->add_option("a", in1)->required();
    comm->add_option("b", in2)->required();
    comm->callback([&] { std::cout << print_map(commutator(load_map(in1, o), load_map(in2, o))); });

    auto* an = app.add_subcommand("analyze", "support, fixed set, breakpoints, slopes");
    an->add_option("map", in1)->required();
    an->callback([&] { std::cout << analysis_text(load_map(in1, o)); });

    std::string kind, eps_text = "1/10", group_name = "FAIET";
    long nparts = 0;
    auto* dec = app.add_subcommand("decomp", "structural decompositions");
    dec->add_option("kind", kind, "rr | fiet | aiet | invnormal | small")
        ->required()
        ->check(CLI::IsMember({"rr", "fiet", "aiet", "invnormal", "small"}));
    dec->add_option("map", in1)->required();
    dec->add_option("--eps", eps_text, "support bound for small");
    dec->add_option("--n", nparts, "number of factors per symmetry (small, involutions)");
    dec->callback([&] {
        PwMap f = load_map(in1, o);
        Factorization out{{}, {}, f.field()};
        if (kind == "rr") {
            out = iet_to_restricted_rotations(f);
        } else if (kind == "fiet") {
            auto [i, g] = fiet_split(f);
            out.push(g, "iet");
            out.push(i.map, "involution");
        } else if (kind == "aiet") {
            auto [e, h] = aiet_split(f);
            out.push(e, "iet");
            out.push(h, "pl");
        } else if (kind == "invnormal") {
            auto nf = involution_normal_form(f);
            out.push(nf.H.inverse(), "conjugator-inverse");
            out.push(nf.normal, nf.fixed_point_free ? "R_1/2" : "RR_1/2");
            out.push(nf.H, "conjugator");
        } else if (nparts > 0) {
            out = small_support_split_involution(f, nparts);
        } else {
            out = small_support_split(f, parse_scalar(eps_text, f.field()));
        }
        std::cout << print_factorization(out);
    });

    auto* ex = app.add_subcommand("express", "element as a product of commutators");
    ex->add_option("map", in1)->required();
    ex->add_option("--group", group_name, "FAIET, FIET or AIET");
    ex->callback([&] {
        PwMap f = load_map(in1, o);
        std::cout << print_commutators(express_as_commutators(f, group_arg(group_name)), f.field());
    });

    auto* sf = app.add_subcommand("saf", "SAF invariant of an IET");
    sf->add_option("map", in1)->required();
    sf->callback([&] { std::cout << print_saf(saf_compute(load_map(in1, o))); });

    std::string theorem = "th1";
    auto* wit = app.add_subcommand("witness", "certificate writing phi as a product of conjugates of f^{+-1}");
    wit->add_option("--theorem", theorem)->check(CLI::IsMember({"th0", "th1"}));
    wit->add_option("f", in1)->required();
    wit->add_option("phi", in2)->required();
    wit->add_option("-o,--out", out_path, "certificate file (default stdout)");
    wit->add_option("--group", group_name);
    wit->callback([&] {
        PwMap f = load_map(in1, o), phi = load_map(in2, o);
        GroupId G = group_arg(group_name);
        Witness w = theorem == "th0" ? witness_th0(f, phi, auto_region(f, phi), G, o.seed) : witness_th1(f, phi, G, o.seed);
        write_output(out_path, print_witness(w));
    });

    std::vector<std::string> certs;
    auto* ver = app.add_subcommand("verify", "independent check of certificates");
    ver->add_option("certificates", certs)->required();
    ver->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    ver->callback([&] {
        std::vector<std::string> lines(certs.size());
        std::vector<char> ok(certs.size(), 0);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i; (i = next++) < certs.size();) {
                bool v = false;
                lines[i] = verify_one(certs[i], v);
                ok[i] = v;
            }
        };
        unsigned n = std::min<unsigned>(o.jobs, static_cast<unsigned>(certs.size()));
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
        for (std::size_t i = 0; i < certs.size(); ++i) {
            std::cout << lines[i] << "\n";
            if (!ok[i]) code = 1;
        }
    });

    std::string gens;
    long bound = 8;
    auto* th = app.add_subcommand("thompson", "simplicity criteria for Stein-Thompson slope groups");
    th->add_option("--gens", gens, "comma-separated generators, e.g. 2,3")->required();
    th->add_option("--bound", bound, "exponent bound for condition (ii)");
    th->callback([&] {
        SlopeSpec s(parse_generator_list(gens));
        auto g = gcd_condition(s);
        std::cout << "generators: " << s.to_string() << "\n";
        std::cout << "d: " << g.d << "\n";
        std::cout << "condition (i): " << (g.holds ? "holds" : "fails") << "\n";
        auto c2 = condition_ii_search(s, bound);
        if (c2) std::cout << "condition (ii): holds (" << c2->first.get_str() << ", " << c2->second.get_str() << ")\n";
        else std::cout << "condition (ii): none found up to bound " << bound << " (inconclusive)\n";
        auto sp = stein_pattern_check(s);
        if (sp) std::cout << "stein pattern: (" << sp->first << ", " << sp->second << ")\n";
        else std::cout << "stein pattern: none\n";
    });

    std::size_t pieces = 4;
    auto* gen = app.add_subcommand("gen", "seeded random element");
    gen->add_option("--group", group_name);
    gen->add_option("--pieces", pieces)->check(CLI::PositiveNumber);
    gen->callback([&] { std::cout << print_map(random_element(group_arg(group_name), pieces, o.seed, default_field(o))); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse-error: " << e.what() << "\n";
        return 2;
    } catch (const NotImplemented& e) {
        std::cerr << "not-implemented: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        std::cerr << "domain-error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "domain-error: " << e.what() << "\n";
        return 3;
    }
}
