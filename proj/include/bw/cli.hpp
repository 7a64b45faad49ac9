#ifndef BW_CLI_HPP
#define BW_CLI_HPP

#include "bw/pipeline.hpp"
#include "bw/slope.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace bw::cli {

// Exit codes: 0 success, 1 violated precondition, 2 resource limit,
// 3 unsupported input, 64 usage error.
constexpr int kOk = 0;
constexpr int kPrecondition = 1;
constexpr int kResourceLimit = 2;
constexpr int kUnsupported = 3;
constexpr int kUsage = 64;

namespace detail {

inline const char* kUsageText = R"(usage:
  bwkit bw exact <graph> [--budget N] [--bd <out>]
  bwkit bw planar <graph>
  bwkit bw approx <graph> [--td <file>]
  bwkit bw eptas <graph> --eps <rational>
  bwkit decompose <graph>
  bwkit blowup <graph> -k <int>
  bwkit gen {grid R C | cylinder CYCLE PATH | crosscap K | handle K | clique N}
  bwkit tangle max-order <graph> [--budget N]
  bwkit slope find <graph> -k <int>
  bwkit verify td <graph> <td>

<graph> and <td> are file paths; '-' means stdin.  Graphs are edge lists
("u v" per line, "v x" declares an isolated vertex, '#' comments).
)";

struct Args {
    std::vector<std::string> pos;
    std::map<std::string, std::string> flags;
};

// splits positionals from --flag/-k style options (each takes one value)
inline bool parse_args(const std::vector<std::string>& in, Args& out, std::ostream& err) {
    static const std::set<std::string> known{"--budget", "--bd", "--td", "--eps", "-k"};
    for (std::size_t i = 0; i < in.size(); ++i) {
        const std::string& a = in[i];
        if (!a.empty() && a[0] == '-' && a != "-") {
            if (!known.count(a)) {
                err << "unknown flag: " << a << "\n";
                return false;
            }
            if (i + 1 >= in.size()) {
                err << "flag " << a << " needs a value\n";
                return false;
            }
            out.flags[a] = in[++i];
        } else {
            out.pos.push_back(a);
        }
    }
    return true;
}

inline Graph load_graph(const std::string& path, std::istream& stdin_stream) {
    if (path == "-") return parse_graph(stdin_stream);
    std::ifstream f(path);
    if (!f) throw invalid_parameter("cannot open graph file: " + path);
    return parse_graph(f);
}

inline TreeDecomposition load_td(const std::string& path, std::istream& stdin_stream) {
    if (path == "-") return parse_td(stdin_stream);
    std::ifstream f(path);
    if (!f) throw invalid_parameter("cannot open decomposition file: " + path);
    return parse_td(f);
}

inline bool parse_long(const std::string& s, long& out) {
    try {
        std::size_t used = 0;
        out = std::stol(s, &used);
        return used == s.size();
    } catch (...) {
        return false;
    }
}

// accepts "p/q" or a decimal like "0.25"
inline bool parse_rational(const std::string& s, long& num, long& den) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        long p, q;
        if (!parse_long(s.substr(0, slash), p) || !parse_long(s.substr(slash + 1), q))
            return false;
        num = p;
        den = q;
        return den != 0;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        if (!parse_long(s, num)) return false;
        den = 1;
        return true;
    }
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 9) return false;
    long w = 0, f = 0;
    if (!whole.empty() && !parse_long(whole, w)) return false;
    if (!parse_long(frac, f)) return false;
    den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    num = w * den + f;
    return true;
}

} // namespace detail

// Runs one invocation; argv excludes the program name.
inline int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
    detail::Args args;
    if (!detail::parse_args(argv, args, err)) {
        err << detail::kUsageText;
        return kUsage;
    }
    const auto& pos = args.pos;
    auto usage = [&]() {
        err << detail::kUsageText;
        return kUsage;
    };
    if (pos.empty()) return usage();

    try {
        if (pos[0] == "gen") {
            if (pos.size() < 2) return usage();
            auto need = [&](std::size_t n) { return pos.size() == 2 + n; };
            auto arg = [&](std::size_t i) {
                long v;
                if (!detail::parse_long(pos[2 + i], v))
                    throw invalid_parameter("gen: bad integer argument");
                return static_cast<int>(v);
            };
            Graph g;
            if (pos[1] == "grid" && need(2)) g = grid(arg(0), arg(1));
            else if (pos[1] == "cylinder" && need(2)) g = cylindrical_grid(arg(0), arg(1));
            else if (pos[1] == "crosscap" && need(1)) g = crosscap_grid(arg(0));
            else if (pos[1] == "handle" && need(1)) g = handle_grid(arg(0));
            else if (pos[1] == "clique" && need(1)) g = clique(arg(0));
            else return usage();
            write_graph(g, out);
            return kOk;
        }

        if (pos[0] == "bw") {
            if (pos.size() != 3) return usage();
            Graph g = detail::load_graph(pos[2], in);
            if (pos[1] == "exact") {
                BwOptions opts;
                if (args.flags.count("--budget")) {
                    long b;
                    if (!detail::parse_long(args.flags["--budget"], b)) return usage();
                    opts.edge_budget = static_cast<int>(b);
                }
                auto r = exact_bw(g, opts);
                out << r.width << "\n";
                if (args.flags.count("--bd")) {
                    std::ofstream f(args.flags["--bd"]);
                    if (!f) throw invalid_parameter("cannot write: " + args.flags["--bd"]);
                    write_bd(r.bd, f);
                }
                return kOk;
            }
            if (pos[1] == "planar") {
                out << planar_bw(g) << "\n";
                return kOk;
            }
            if (pos[1] == "approx") {
                TreeDecomposition td;
                if (args.flags.count("--td")) {
                    td = detail::load_td(args.flags["--td"], in);
                } else {
                    auto dec = decompose_adhesion3(g);
                    if (!dec.success)
                        throw unsupported_input("graph is not decomposable into planar pieces");
                    td = dec.td;
                }
                out << approx_report_json(approx_bw(g, td)) << "\n";
                return kOk;
            }
            if (pos[1] == "eptas") {
                if (!args.flags.count("--eps")) return usage();
                long num, den;
                if (!detail::parse_rational(args.flags["--eps"], num, den)) return usage();
                EptasOptions opts;
                opts.exact.edge_budget = 26;
                out << eptas_bw(g, num, den, 3, opts) << "\n";
                return kOk;
            }
            return usage();
        }

        if (pos[0] == "decompose") {
            if (pos.size() != 2) return usage();
            Graph g = detail::load_graph(pos[1], in);
            auto dec = decompose_adhesion3(g);
            if (!dec.success) {
                err << "not decomposable: a non-planar piece with "
                    << dec.witness.num_vertices() << " vertices admits no cut\n";
                return kUnsupported;
            }
            write_td(dec.td, out);
            return kOk;
        }

        if (pos[0] == "blowup") {
            if (pos.size() != 2 || !args.flags.count("-k")) return usage();
            long k;
            if (!detail::parse_long(args.flags["-k"], k)) return usage();
            Graph g = detail::load_graph(pos[1], in);
            write_graph(blowup(g, static_cast<int>(k)), out);
            return kOk;
        }

        if (pos[0] == "tangle") {
            if (pos.size() != 3 || pos[1] != "max-order") return usage();
            Graph g = detail::load_graph(pos[2], in);
            TangleOptions opts;
            if (args.flags.count("--budget")) {
                long b;
                if (!detail::parse_long(args.flags["--budget"], b)) return usage();
                opts.vertex_budget = static_cast<int>(b);
            }
            out << max_tangle_order(g, opts) << "\n";
            return kOk;
        }

        if (pos[0] == "slope") {
            if (pos.size() != 3 || pos[1] != "find" || !args.flags.count("-k")) return usage();
            long k;
            if (!detail::parse_long(args.flags["-k"], k)) return usage();
            Graph g = detail::load_graph(pos[2], in);
            auto pe = planar_embed(g);
            if (!pe.planar) throw invalid_parameter("slope find: graph is not planar");
            RadialGraph r = radial_graph(g, pe.embedding);
            auto s = find_slope(r, static_cast<int>(k));
            if (!s) {
                out << "none\n";
                return kOk;
            }
            auto cycles = enumerate_radial_cycles(r, static_cast<int>(k));
            for (std::size_t i = 0; i < cycles.size(); ++i) {
                out << "cycle";
                for (int v : cycles[i].verts) out << " " << v;
                out << " ins";
                std::uint64_t mask = s->choice[i] ? cycles[i].side1 : cycles[i].side0;
                for (std::size_t f = 0; f < r.radial_face_count(); ++f)
                    if (mask >> f & 1) out << " " << r.face_label(f);
                out << "\n";
            }
            return kOk;
        }

        if (pos[0] == "verify") {
            if (pos.size() != 4 || pos[1] != "td") return usage();
            Graph g = detail::load_graph(pos[2], in);
            TreeDecomposition td = detail::load_td(pos[3], in);
            auto violations = validate_td(g, td);
            if (violations.empty()) {
                out << "ok\n";
            } else {
                for (auto& v : violations) out << "violation: " << v.describe() << "\n";
            }
            return kOk;
        }

        return usage();
    } catch (const invalid_parameter& e) {
        err << "error: " << e.what() << "\n";
        return kPrecondition;
    } catch (const resource_limit& e) {
        err << "error: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const unsupported_input& e) {
        err << "error: " << e.what() << "\n";
        return kUnsupported;
    }
}

} // namespace bw::cli

#endif
