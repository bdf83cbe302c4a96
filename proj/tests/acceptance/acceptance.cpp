// Acceptance run: simulation frequencies against the published tables,
// soundness of the ordering conditions against exact oracles, and
// byte-for-byte determinism of the command-line simulator.
//
// usage: acceptance <path-to-decaycent> [work-dir]
// DECAYCENT_ACCEPTANCE_SEED overrides the master seed.

#include <sys/wait.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "decaycent/centrality.hpp"
#include "decaycent/generation.hpp"
#include "decaycent/ordering.hpp"
#include "decaycent/simulation.hpp"
#include "../oracles.hpp"

namespace fs = std::filesystem;
using namespace decaycent;
using boost::multiprecision::cpp_rational;

namespace {

constexpr std::uint64_t kTrials = 10000;
constexpr std::uint64_t kLargeTrials = 2000;

struct Cell {
    std::size_t n;
    double p;
    AggregateStats stats;
    std::vector<std::uint64_t> disjoint_nonint;  // per delta, non-intersecting trials
    std::vector<std::uint64_t> disjoint_all;     // per delta, all trials
    std::uint64_t failures = 0;
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

Cell run_cell(std::size_t n, double p, std::uint64_t trials, std::uint64_t seed) {
    ExperimentConfig c;
    c.n = n;
    c.p = p;
    c.trials = trials;
    c.seed = seed;
    c.workers = workers();
    Cell cell{n, p, {}, std::vector<std::uint64_t>(c.grid_points, 0), std::vector<std::uint64_t>(c.grid_points, 0)};
    auto result = run_experiment(c, [&](const TrialRecord& r) {
        for (std::size_t k = 0; k < r.per_delta.size(); ++k) {
            if (r.per_delta[k].dc_disjoint_both) {
                ++cell.disjoint_all[k];
                if (!r.deg_clos_intersect) ++cell.disjoint_nonint[k];
            }
        }
    });
    cell.stats = std::move(result.stats);
    cell.failures = result.failures.size();
    return cell;
}

std::string fmt(double x, int prec = 4) {
    std::ostringstream s;
    s.precision(prec);
    s << std::fixed << x;
    return s.str();
}

struct Verdict {
    bool pass = true;
    std::vector<std::string> detail;
    void note(const std::string& s) { detail.push_back(s); }
    void require(bool ok, const std::string& s) {
        pass = pass && ok;
        detail.push_back((ok ? "ok    " : "FAIL  ") + s);
    }
};

void report(int id, const std::string& name, const Verdict& v) {
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name << '\n';
    for (const auto& d : v.detail) std::cout << "    " << d << '\n';
    std::cout.flush();
}

const Cell& find_cell(const std::vector<Cell>& cells, std::size_t n, double p) {
    for (const auto& c : cells)
        if (c.n == n && std::abs(c.p - p) < 1e-12) return c;
    throw std::logic_error("missing cell");
}

double rate(std::uint64_t num, std::uint64_t den) { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

// ---------------------------------------------------------------- 1 to 4

Verdict criterion1(const std::vector<Cell>& cells) {
    Verdict v;
    const auto& a = find_cell(cells, 10, 0.05).stats;
    const auto& b = find_cell(cells, 10, 0.5).stats;
    const auto& c = find_cell(cells, 50, 0.3).stats;
    const double fa = rate(a.count_intersect, a.trials);
    const double fb = rate(b.count_intersect, b.trials);
    const double fc = rate(c.count_intersect, c.trials);
    v.require(std::abs(fa - 0.862) <= 0.02, "(10,0.05): " + fmt(fa) + " within 0.02 of 0.862 (" +
                                                 std::to_string(a.count_intersect) + "/" + std::to_string(a.trials) + ")");
    v.require(fb >= 0.995, "(10,0.5): " + fmt(fb) + " >= 0.995");
    v.require(fc >= 0.999, "(50,0.3): " + fmt(fc) + " >= 0.999");
    for (const auto& cell : cells) {
        v.note("n=" + std::to_string(cell.n) + " p=" + fmt(cell.p, 2) + " intersect " +
               std::to_string(cell.stats.count_intersect) + "/" + std::to_string(cell.stats.trials) +
               " failed " + std::to_string(cell.failures));
    }
    return v;
}

Verdict criterion2(const std::vector<Cell>& cells) {
    Verdict v;
    for (const auto& cell : cells) {
        if (cell.n == 10) {
            v.require(cell.stats.count_intersect_escape == 0,
                      "(10," + fmt(cell.p, 2) + "): " + std::to_string(cell.stats.count_intersect_escape) + " == 0");
        }
    }
    const auto& c = find_cell(cells, 20, 0.05).stats;
    v.require(c.count_intersect_escape <= 30, "(20,0.05): " + std::to_string(c.count_intersect_escape) + " <= 30");
    for (const auto& cell : cells) {
        if (cell.n != 10) {
            v.note("n=" + std::to_string(cell.n) + " p=" + fmt(cell.p, 2) + " escape " +
                   std::to_string(cell.stats.count_intersect_escape));
        }
    }
    return v;
}

Verdict criterion3(const std::vector<Cell>& cells) {
    Verdict v;
    const std::size_t grid = cells.front().disjoint_all.size();
    std::uint64_t nonint = 0, trials = 0, all_disjoint = 0;
    for (const auto& c : cells) {
        nonint += c.stats.count_non_intersecting;
        trials += c.stats.trials;
    }
    double worst = 0.0;
    std::size_t worst_k = 0;
    double worst_all = 0.0;
    for (std::size_t k = 0; k < grid; ++k) {
        std::uint64_t d = 0, da = 0;
        for (const auto& c : cells) {
            d += c.disjoint_nonint[k];
            da += c.disjoint_all[k];
        }
        all_disjoint += da;
        if (rate(d, nonint) > worst) {
            worst = rate(d, nonint);
            worst_k = k;
        }
        worst_all = std::max(worst_all, rate(da, trials));
    }
    const double pooled = rate(all_disjoint, trials * grid);
    v.require(worst <= 0.10, "max over delta of pooled disjoint frequency (non-intersecting trials, n=" +
                                 std::to_string(nonint) + "): " + fmt(worst) + " at delta=" +
                                 fmt((worst_k + 1) / 100.0, 2) + " <= 0.10");
    v.require(pooled <= 0.02, "disjoint rate pooled over delta and all trials: " + fmt(pooled, 5) + " <= 0.02");
    v.note("max over delta of pooled disjoint frequency over all trials: " + fmt(worst_all));
    for (const auto& c : cells) {
        double cell_worst = 0.0;
        for (std::size_t k = 0; k < grid; ++k)
            cell_worst = std::max(cell_worst, rate(c.disjoint_nonint[k], c.stats.count_non_intersecting));
        v.note("n=" + std::to_string(c.n) + " p=" + fmt(c.p, 2) + " non-intersecting " +
               std::to_string(c.stats.count_non_intersecting) + " max disjoint freq " + fmt(cell_worst));
    }
    return v;
}

Verdict criterion4(const std::vector<Cell>& rule_cells) {
    Verdict v;
    for (const auto& c : rule_cells) {
        std::uint32_t worst = 0;
        double worst_delta = 0.0;
        for (const auto& d : c.stats.per_delta) {
            if (d.rank_rule_of_thumb.p95 > worst) {
                worst = d.rank_rule_of_thumb.p95;
                worst_delta = d.delta;
            }
        }
        v.require(worst <= 3, "(" + std::to_string(c.n) + "," + fmt(c.p, 2) + ") trials " +
                                  std::to_string(c.stats.trials) + ": max p95 rank " + std::to_string(worst) +
                                  " (delta=" + fmt(worst_delta, 2) + ") <= 3");
    }
    return v;
}

// ---------------------------------------------------------------- 5 to 7

struct SmallGraph {
    Graph g;
    std::vector<std::vector<std::int64_t>> profiles;  // from Floyd-Warshall
};

std::vector<SmallGraph> small_graphs(std::uint64_t seed, std::size_t count, std::size_t n_min, std::size_t n_max) {
    std::vector<SmallGraph> out;
    std::mt19937_64 pick(seed);
    for (std::uint64_t t = 0; out.size() < count; ++t) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(n_min, n_max)(pick);
        const double p = std::uniform_real_distribution<double>(0.1, 0.9)(pick);
        ConnectedSample s;
        try {
            s = sample_connected_gnp(n, p, TrialSeed{seed, t});
        } catch (const RejectionLimitError&) {
            continue;
        }
        const auto fw = oracle::floyd_warshall(s.graph);
        SmallGraph sg{std::move(s.graph), {}};
        for (std::size_t v = 0; v < n; ++v) sg.profiles.push_back(oracle::profile(fw, v));
        out.push_back(std::move(sg));
    }
    return out;
}

// Exact signs of DC_i - DC_j at delta = k/1000, k = 1..999.
std::vector<int> per_mille_signs(const std::vector<std::int64_t>& di, const std::vector<std::int64_t>& dj) {
    std::vector<__int128> a(di.size());
    std::size_t L = 0;
    for (std::size_t l = 0; l < a.size(); ++l) {
        a[l] = di[l] - dj[l];
        if (a[l] != 0) L = l + 1;
    }
    std::vector<int> sign(999, 0);
    if (L == 0) return sign;
    std::vector<__int128> thousand(L + 1, 1);
    for (std::size_t e = 1; e <= L; ++e) thousand[e] = thousand[e - 1] * 1000;
    for (int k = 1; k <= 999; ++k) {
        // sum_l a_l k^l 1000^(L-l)
        __int128 acc = a[L - 1];
        for (std::size_t l = L - 1; l >= 1; --l) acc = a[l - 1] * thousand[L - l] + k * acc;
        acc *= k;
        sign[static_cast<std::size_t>(k - 1)] = acc > 0 ? 1 : (acc < 0 ? -1 : 0);
    }
    return sign;
}

Verdict criterion5(std::uint64_t seed) {
    Verdict v;
    const auto graphs = small_graphs(seed, 1000, 5, 12);
    std::uint64_t pairs = 0, fired[4] = {0, 0, 0, 0}, violations[4] = {0, 0, 0, 0};
    std::string first_violation;
    auto check = [&](int which, int expect, int lo, int hi, const std::vector<int>& sign, const Graph& g,
                     std::size_t i, std::size_t j) {
        ++fired[which];
        for (int k = lo; k <= hi; ++k) {
            if (sign[static_cast<std::size_t>(k - 1)] != expect) {
                ++violations[which];
                if (first_violation.empty()) {
                    std::ostringstream s;
                    s << "checker " << which << " pair (" << i << "," << j << ") delta " << k << "/1000 edges";
                    for (auto e : g.edges()) s << ' ' << e.u << '-' << e.v;
                    first_violation = s.str();
                }
                return;
            }
        }
    };
    bool profiles_ok = true;
    for (const auto& sg : graphs) {
        const auto table = centrality_table(sg.g);
        const std::size_t n = table.n;
        for (std::size_t v = 0; v < n; ++v) profiles_ok = profiles_ok && table.nodes[v].profile.counts == sg.profiles[v];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                ++pairs;
                const auto& ni = table.nodes[i];
                const auto& nj = table.nodes[j];
                const auto sign = per_mille_signs(sg.profiles[i], sg.profiles[j]);
                auto expect_of = [](Relation r) { return r == Relation::greater ? 1 : (r == Relation::less ? -1 : 0); };
                const auto dd = check_distance_dominance(ni.profile, nj.profile);
                if (dd.relation != Relation::incomparable) check(0, expect_of(dd.relation), 1, 999, sign, sg.g, i, j);
                const auto fd = check_farness_dominance(ni.fvec, nj.fvec);
                if (fd.relation != Relation::incomparable) check(1, expect_of(fd.relation), 1, 999, sign, sg.g, i, j);
                if (check_lower_half(ni.profile, nj.profile).fired()) check(2, 1, 1, 500, sign, sg.g, i, j);
                if (check_lower_half(nj.profile, ni.profile).fired()) check(2, -1, 1, 500, sign, sg.g, i, j);
                if (check_upper_half(ni.fvec, nj.fvec).fired()) check(3, 1, 500, 999, sign, sg.g, i, j);
                if (check_upper_half(nj.fvec, ni.fvec).fired()) check(3, -1, 500, 999, sign, sg.g, i, j);
            }
        }
    }
    v.require(profiles_ok, "library distance profiles equal Floyd-Warshall profiles");
    const char* names[4] = {"distance dominance, all delta", "farness dominance, all delta",
                            "degree-advantage conditions, delta <= 0.5", "farness-advantage conditions, delta >= 0.5"};
    for (int w = 0; w < 4; ++w) {
        v.require(violations[w] == 0 && fired[w] > 0, std::string(names[w]) + ": fired " + std::to_string(fired[w]) +
                                                          ", violations " + std::to_string(violations[w]));
    }
    v.note(std::to_string(graphs.size()) + " graphs, " + std::to_string(pairs) + " pairs, 999 exact grid points");
    if (!first_violation.empty()) v.note("first violation: " + first_violation);
    return v;
}

Verdict criterion6(std::uint64_t seed) {
    Verdict v;
    const auto graphs = small_graphs(seed ^ 0x6A09E667F3BCC909ULL, 200, 3, 20);
    double worst_a = 0.0, worst_b = 0.0;
    bool sums_ok = true, fvec_ok = true;
    std::uint64_t pairs = 0;
    for (const auto& sg : graphs) {
        const auto table = centrality_table(sg.g);
        const std::size_t n = table.n;
        std::vector<std::vector<oracle::BigInt>> ref(n);
        for (std::size_t v = 0; v < n; ++v) {
            ref[v] = oracle::higher_order_farness(sg.profiles[v]);
            for (std::size_t k = 0; k < ref[v].size(); ++k)
                fvec_ok = fvec_ok && oracle::BigInt(to_string(table.nodes[v].fvec[k])) == ref[v][k];
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                ++pairs;
                const auto c = dc_difference_coeffs(table.nodes[i].profile, table.nodes[j].profile);
                oracle::BigInt sa = 0, sb = 0;
                for (std::size_t k = 0; k < c.a.size(); ++k) {
                    sa += c.a[k];
                    sb += ref[i][k] - ref[j][k];
                    fvec_ok = fvec_ok && oracle::BigInt(to_string(c.b[k])) == ref[i][k] - ref[j][k];
                }
                sums_ok = sums_ok && sa == 0 && sb == 0;
                for (int k = 1; k <= 999; ++k) {
                    const double d = k / 1000.0;
                    const double direct = oracle::decay_naive(sg.profiles[i], d) - oracle::decay_naive(sg.profiles[j], d);
                    worst_a = std::max(worst_a, std::abs(dc_difference_factored(c.a, d) - direct));
                    worst_b = std::max(worst_b, std::abs(dc_difference_factored_eps(c.b, d) - direct));
                }
            }
        }
    }
    v.require(worst_a <= 1e-10, "delta-form factored difference: max abs error " + std::to_string(worst_a) + " <= 1e-10");
    v.require(worst_b <= 1e-10, "eps-form factored difference: max abs error " + std::to_string(worst_b) + " <= 1e-10");
    v.require(sums_ok, "coefficient sums are exactly zero");
    v.require(fvec_ok, "difference coefficients match the definition in exact arithmetic");
    v.note(std::to_string(graphs.size()) + " graphs (n <= 20), " + std::to_string(pairs) + " ordered pairs, 999 delta values");
    return v;
}

int sign_at_rational(const std::vector<std::int64_t>& di, const std::vector<std::int64_t>& dj, const oracle::BigInt& num,
                     const oracle::BigInt& den) {
    std::vector<std::int64_t> a(di.size());
    for (std::size_t l = 0; l < a.size(); ++l) a[l] = di[l] - dj[l];
    return oracle::poly_sign_rational(a, num, den);
}

Verdict criterion7(std::uint64_t seed) {
    Verdict v;
    const auto graphs = small_graphs(seed ^ 0xBB67AE8584CAA73BULL, 1000, 3, 12);
    const oracle::BigInt million = 1000000;
    std::uint64_t low_fail = 0, high_fail = 0;
    std::string example;
    for (const auto& sg : graphs) {
        const std::size_t n = sg.profiles.size();
        // lex-greatest distance profile
        std::size_t top_d = 0;
        for (std::size_t u = 1; u < n; ++u)
            if (sg.profiles[u] > sg.profiles[top_d]) top_d = u;
        // lex-greatest closeness vector, C^k = 1/F^k (0 when F^k = 0)
        // boost::rational rejects negative unbounded denominators, so keep them positive
        std::vector<std::vector<cpp_rational>> cvec(n);
        for (std::size_t u = 0; u < n; ++u) {
            for (const auto& f : oracle::higher_order_farness(sg.profiles[u])) {
                if (f == 0) cvec[u].emplace_back(0);
                else if (f > 0) cvec[u].emplace_back(oracle::BigInt(1), f);
                else cvec[u].emplace_back(oracle::BigInt(-1), oracle::BigInt(-f));
            }
        }
        std::size_t top_c = 0;
        for (std::size_t u = 1; u < n; ++u)
            if (cvec[u] > cvec[top_c]) top_c = u;
        for (std::size_t u = 0; u < n; ++u) {
            if (sign_at_rational(sg.profiles[top_d], sg.profiles[u], 1, million) < 0) {
                ++low_fail;
                if (example.empty()) example = "low delta: node " + std::to_string(top_d) + " beaten by " + std::to_string(u);
            }
            if (sign_at_rational(sg.profiles[top_c], sg.profiles[u], million - 1, million) < 0) {
                ++high_fail;
                if (example.empty()) example = "high delta: node " + std::to_string(top_c) + " beaten by " + std::to_string(u);
            }
        }
    }
    v.require(low_fail == 0, "lex-greatest distance profile maximizes DC at delta = 1e-6: exceptions " + std::to_string(low_fail));
    v.require(high_fail == 0, "lex-greatest closeness vector maximizes DC at delta = 1 - 1e-6: exceptions " + std::to_string(high_fail));
    v.note(std::to_string(graphs.size()) + " graphs (n <= 12), exact rational evaluation");
    if (!example.empty()) v.note("counterexample: " + example);
    return v;
}

// ---------------------------------------------------------------- 8

int shell(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict criterion8(const std::string& cli, const fs::path& work, std::uint64_t seed) {
    Verdict v;
    const std::string base = cli + " simulate --n 20 --p 0.1 --trials 400 --grid-points 99 --seed " + std::to_string(seed);
    struct RunSpec {
        std::string name;
        unsigned workers;
    };
    const RunSpec runs[] = {{"w1a", 1}, {"w1b", 1}, {"w8a", 8}, {"w8b", 8}};
    for (const auto& r : runs) {
        const auto dir = work / r.name;
        fs::remove_all(dir);
        const int code = shell(base + " --workers " + std::to_string(r.workers) + " --out-dir " + dir.string() + " > /dev/null");
        v.require(code == 0, "simulate with " + std::to_string(r.workers) + " worker(s) exits 0 (" + r.name + ")");
    }
    for (const char* file : {"records.csv", "aggregate.csv"}) {
        const auto ref = slurp(work / "w1a" / file);
        v.require(!ref.empty(), std::string(file) + " is non-empty (" + std::to_string(ref.size()) + " bytes)");
        for (const auto& r : runs) {
            if (r.name == "w1a") continue;
            v.require(slurp(work / r.name / file) == ref, std::string(file) + " identical: w1a vs " + r.name);
        }
    }
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-decaycent> [work-dir]\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path work = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "decaycent_acceptance";
    fs::create_directories(work);
    std::uint64_t seed = 20261017;
    if (const char* env = std::getenv("DECAYCENT_ACCEPTANCE_SEED")) seed = std::strtoull(env, nullptr, 10);
    std::cout << "seed " << seed << ", workers " << workers() << '\n';

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    std::vector<Cell> cells;
    std::uint64_t cell_seed = seed;
    for (std::size_t n : {10, 20, 50}) {
        for (int pk = 1; pk <= 10; ++pk) {
            cells.push_back(run_cell(n, 0.05 * pk, kTrials, ++cell_seed));
        }
    }
    std::cout << "simulated " << cells.size() << " cells x " << kTrials << " trials in " << fmt(elapsed(), 1) << " s\n";
    std::vector<Cell> rule_cells;
    rule_cells.push_back(find_cell(cells, 50, 0.05));
    rule_cells.push_back(run_cell(100, 0.05, kLargeTrials, ++cell_seed));
    rule_cells.push_back(run_cell(200, 0.05, kLargeTrials, ++cell_seed));
    std::cout << "simulated large cells in " << fmt(elapsed(), 1) << " s\n\n";

    std::vector<Verdict> verdicts;
    auto emit = [&](int id, const std::string& name, Verdict v) {
        report(id, name, v);
        verdicts.push_back(std::move(v));
    };
    emit(1, "frequency of intersecting degree and closeness maximizers", criterion1(cells));
    emit(2, "decay maximizers leaving the degree-closeness intersection", criterion2(cells));
    emit(3, "decay maximizers outside both degree and closeness maximizers", criterion3(cells));
    emit(4, "rule-of-thumb pick ranks in the top three (95th percentile)", criterion4(rule_cells));
    emit(5, "ordering conditions are sound on the 999-point grid", criterion5(seed));
    emit(6, "factored difference identities", criterion6(seed));
    emit(7, "limit orderings at delta = 1e-6 and 1 - 1e-6", criterion7(seed));
    emit(8, "simulate output independent of run and worker count", criterion8(cli, work, seed));

    int passed = 0;
    for (const auto& v : verdicts) passed += v.pass ? 1 : 0;
    std::cout << "\n" << passed << "/" << verdicts.size() << " criteria passed in " << fmt(elapsed(), 1) << " s\n";
    return passed == static_cast<int>(verdicts.size()) ? 0 : 1;
}
