#include "pmedian/config.hpp"

#include <map>
#include <sstream>

#include "io_util.hpp"

namespace pmedian {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Ga: return "GA";
        case Algorithm::Ils: return "ILS";
        case Algorithm::Pso: return "PSO";
        case Algorithm::Sa: return "SA";
        case Algorithm::Vns: return "VNS";
    }
    return "GA";
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "GA") return Algorithm::Ga;
    if (s == "ILS") return Algorithm::Ils;
    if (s == "PSO") return Algorithm::Pso;
    if (s == "SA") return Algorithm::Sa;
    if (s == "VNS") return Algorithm::Vns;
    throw ValidationError("unknown algorithm: '" + s + "'");
}

std::string to_string(IterBudgetKind k) {
    switch (k) {
        case IterBudgetKind::Np5: return "Np/5";
        case IterBudgetKind::P100: return "100p";
        case IterBudgetKind::N2_100: return "2N100";
        case IterBudgetKind::M1: return "1M";
    }
    return "Np/5";
}

IterBudgetKind iter_budget_from_string(const std::string& s) {
    if (s == "Np/5" || s == "NP5") return IterBudgetKind::Np5;
    if (s == "100p" || s == "P100") return IterBudgetKind::P100;
    if (s == "2N100" || s == "N2_100") return IterBudgetKind::N2_100;
    if (s == "1M" || s == "M1") return IterBudgetKind::M1;
    throw ValidationError("unknown iteration budget: '" + s + "'");
}

std::uint64_t iteration_budget(IterBudgetKind kind, std::uint64_t n_customers, std::uint64_t p) {
    if (n_customers < 1 || p < 1)
        throw ValidationError("iteration budget needs N >= 1 and p >= 1");
    switch (kind) {
        case IterBudgetKind::Np5: return n_customers * p / 5;
        case IterBudgetKind::P100: return 100 * p;
        case IterBudgetKind::N2_100: return std::max<std::uint64_t>(2 * n_customers, 100);
        case IterBudgetKind::M1: return 1000000;
    }
    return 0;
}

std::string to_string(GenerationKind k) {
    switch (k) {
        case GenerationKind::Rand: return "RAND";
        case GenerationKind::Rand100: return "100RAND";
        case GenerationKind::Start: return "START";
    }
    return "RAND";
}

GenerationKind generation_from_string(const std::string& s) {
    if (s == "RAND") return GenerationKind::Rand;
    if (s == "100RAND" || s == "RAND100") return GenerationKind::Rand100;
    if (s == "START") return GenerationKind::Start;
    throw ValidationError("unknown generation strategy: '" + s + "'");
}

std::string to_string(SelectionKind k) {
    switch (k) {
        case SelectionKind::Rand: return "RAND";
        case SelectionKind::Better: return "BETTER";
        case SelectionKind::Worse: return "WORSE";
    }
    return "RAND";
}

std::string to_string(CrossoverKind k) {
    switch (k) {
        case CrossoverKind::Merging: return "MERGING";
        case CrossoverKind::OnePoint: return "1POINT";
        case CrossoverKind::CupCap: return "CUPCAP";
        case CrossoverKind::RandParent: return "1RANDPARENT";
    }
    return "CUPCAP";
}

std::string to_string(ReplacementKind k) { return k == ReplacementKind::Comma ? "COMMA" : "PLUS"; }
std::string to_string(NextKind k) { return k == NextKind::Seq ? "SEQ" : "DVNS"; }

std::string to_string(CoolingKind k) {
    switch (k) {
        case CoolingKind::Lin: return "LIN";
        case CoolingKind::Exp: return "EXP";
        case CoolingKind::None: return "NONE";
    }
    return "LIN";
}

std::string to_string(AcceptKind k) {
    switch (k) {
        case AcceptKind::Elitist: return "ELITIST";
        case AcceptKind::Walk: return "WALK";
        case AcceptKind::Prob: return "PROB";
    }
    return "ELITIST";
}

namespace {

SelectionKind selection_from_string(const std::string& s) {
    if (s == "RAND") return SelectionKind::Rand;
    if (s == "BETTER" || s == "BETTERS") return SelectionKind::Better;
    if (s == "WORSE") return SelectionKind::Worse;
    throw ValidationError("unknown selection: '" + s + "'");
}

CrossoverKind crossover_from_string(const std::string& s) {
    if (s == "MERGING") return CrossoverKind::Merging;
    if (s == "1POINT" || s == "ONEPOINT") return CrossoverKind::OnePoint;
    if (s == "CUPCAP") return CrossoverKind::CupCap;
    if (s == "1RANDPARENT" || s == "RANDPARENT") return CrossoverKind::RandParent;
    throw ValidationError("unknown crossover: '" + s + "'");
}

ReplacementKind replacement_from_string(const std::string& s) {
    if (s == "COMMA" || s == "(mu,lambda)") return ReplacementKind::Comma;
    if (s == "PLUS" || s == "(mu+lambda)") return ReplacementKind::Plus;
    throw ValidationError("unknown replacement: '" + s + "'");
}

NextKind next_from_string(const std::string& s) {
    if (s == "SEQ") return NextKind::Seq;
    if (s == "DVNS") return NextKind::Dvns;
    throw ValidationError("unknown next strategy: '" + s + "'");
}

CoolingKind cooling_from_string(const std::string& s) {
    if (s == "LIN") return CoolingKind::Lin;
    if (s == "EXP") return CoolingKind::Exp;
    if (s == "NONE") return CoolingKind::None;
    throw ValidationError("unknown cooling strategy: '" + s + "'");
}

AcceptKind accept_from_string(const std::string& s) {
    if (s == "ELITIST") return AcceptKind::Elitist;
    if (s == "WALK") return AcceptKind::Walk;
    if (s == "PROB") return AcceptKind::Prob;
    throw ValidationError("unknown acceptance strategy: '" + s + "'");
}

void check_prob(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError(std::string(name) + " must be in [0, 1]");
}

}  // namespace

bool AlgorithmConfig::needs_domain() const {
    if (localsearch.kind == LocalSearchKind::Imp || localsearch2.kind == LocalSearchKind::Imp)
        return true;
    if (algorithm == Algorithm::Ga) return ga.mutation_prob > 0.0 && ga.mutation_mode == ShakeMode::Close;
    if (algorithm == Algorithm::Ils || algorithm == Algorithm::Sa || algorithm == Algorithm::Vns)
        return shake_mode == ShakeMode::Close;
    return false;
}

void AlgorithmConfig::validate() const {
    if (time_budget_s <= 0.0) throw ValidationError("time budget must be positive");
    localsearch.validate();
    localsearch2.validate();
    if (domain_kind && domain_d < 1) throw ValidationError("domain d must be >= 1");
    if (needs_domain() && !domain_kind)
        throw ValidationError("configuration requires a domain model (set domain=NEAR|QUAD)");
    switch (algorithm) {
        case Algorithm::Ga:
            if (ga.population < 2) throw ValidationError("GA population must be >= 2");
            if (ga.population > 30) throw ValidationError("GA population must be <= 30");
            if (ga.lambda < 1 || ga.lambda > ga.population)
                throw ValidationError("GA lambda must be in [1, population]");
            check_prob(ga.mutation_prob, "mutation_prob");
            break;
        case Algorithm::Ils:
            if (ils.npert < 1 || ils.npert > 20)
                throw ValidationError("ILS npert must be in [1, 20]");
            break;
        case Algorithm::Sa:
            if (!(sa.t0 >= 1.0 && sa.t0 <= 100.0))
                throw ValidationError("SA t0 must be in [1, 100]");
            if (sa.cooling == CoolingKind::Exp && !(sa.cooling_opt > 0.0 && sa.cooling_opt < 1.0))
                throw ValidationError("SA EXP cooling needs cooling_opt in (0, 1)");
            break;
        case Algorithm::Pso:
            if (pso.population < 2) throw ValidationError("PSO population must be >= 2");
            if (pso.population > 30) throw ValidationError("PSO population must be <= 30");
            check_prob(pso.omega, "omega");
            check_prob(pso.phi_p, "phi_p");
            check_prob(pso.phi_g, "phi_g");
            break;
        case Algorithm::Vns:
            if (vns.k_max < 1 || vns.k_max > 50)
                throw ValidationError("VNS k_max must be in [1, 50]");
            if (vns.k_big < 1 || vns.k_big > 100)
                throw ValidationError("VNS K must be in [1, 100]");
            check_prob(vns.accept_prob, "accept_prob");
            break;
    }
}

AlgorithmConfig parse_config_text(const std::string& text) {
    AlgorithmConfig cfg;
    std::map<std::string, std::string> kv;
    std::istringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) +
                                  " is not key=value: '" + t + "'");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        if (!kv.emplace(key, value).second)
            throw ValidationError("duplicate config key '" + key + "'");
    }

    auto take = [&](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto take_int = [&](const char* key) -> std::optional<int> {
        auto v = take(key);
        if (!v) return std::nullopt;
        return static_cast<int>(detail::parse_int(*v, key));
    };
    auto take_double = [&](const char* key) -> std::optional<double> {
        auto v = take(key);
        if (!v) return std::nullopt;
        return detail::parse_double(*v, key);
    };

    if (auto v = take("algorithm")) cfg.algorithm = algorithm_from_string(*v);
    if (auto v = take("iter")) cfg.iter_budget = iter_budget_from_string(*v);
    if (auto v = take_double("time_budget_s")) cfg.time_budget_s = *v;
    if (auto v = take("generation")) cfg.generation = generation_from_string(*v);
    if (auto v = take("domain")) cfg.domain_kind = domain_kind_from_string(*v);
    if (auto v = take_int("d")) cfg.domain_d = *v;
    if (auto v = take("localsearch")) cfg.localsearch.kind = local_search_kind_from_string(*v);
    if (auto v = take_int("laux")) cfg.localsearch.laux = *v;
    if (auto v = take_int("impparam")) cfg.localsearch.imp_param = *v;
    if (auto v = take("localsearch2")) cfg.localsearch2.kind = local_search_kind_from_string(*v);
    if (auto v = take_int("laux2")) cfg.localsearch2.laux = *v;
    if (auto v = take_int("impparam2")) cfg.localsearch2.imp_param = *v;
    if (auto v = take("shake")) cfg.shake_mode = shake_mode_from_string(*v);
    if (auto v = take_int("population")) {
        cfg.ga.population = *v;
        cfg.pso.population = *v;
    }
    if (auto v = take_int("lambda")) cfg.ga.lambda = *v;
    if (auto v = take("selection")) cfg.ga.selection = selection_from_string(*v);
    if (auto v = take("crossover")) cfg.ga.crossover = crossover_from_string(*v);
    if (auto v = take("mutation")) cfg.ga.mutation_mode = shake_mode_from_string(*v);
    if (auto v = take_double("mutation_prob")) cfg.ga.mutation_prob = *v;
    if (auto v = take("replacement")) cfg.ga.replacement = replacement_from_string(*v);
    if (auto v = take_int("npert")) cfg.ils.npert = *v;
    if (auto v = take("next")) {
        cfg.sa.next = next_from_string(*v);
        cfg.vns.next = cfg.sa.next;
    }
    if (auto v = take_double("t0")) cfg.sa.t0 = *v;
    if (auto v = take("cooling")) cfg.sa.cooling = cooling_from_string(*v);
    if (auto v = take_double("cooling_opt")) cfg.sa.cooling_opt = *v;
    if (auto v = take_double("omega")) cfg.pso.omega = *v;
    if (auto v = take_double("phi_p")) cfg.pso.phi_p = *v;
    if (auto v = take_double("phi_g")) cfg.pso.phi_g = *v;
    if (auto v = take_int("k_max")) cfg.vns.k_max = *v;
    if (auto v = take_int("K")) cfg.vns.k_big = *v;
    if (auto v = take("accept")) cfg.vns.accept = accept_from_string(*v);
    if (auto v = take_double("accept_prob")) cfg.vns.accept_prob = *v;
    if (auto v = take_int("seed")) cfg.seed = static_cast<std::uint64_t>(*v);

    if (!kv.empty())
        throw ValidationError("unknown config key '" + kv.begin()->first + "'");
    cfg.validate();
    return cfg;
}

AlgorithmConfig load_config(const std::string& path) {
    return parse_config_text(detail::slurp(path));
}

std::string config_to_text(const AlgorithmConfig& cfg) {
    std::ostringstream out;
    out << "algorithm=" << to_string(cfg.algorithm) << "\n";
    out << "iter=" << to_string(cfg.iter_budget) << "\n";
    out << "time_budget_s=" << cfg.time_budget_s << "\n";
    out << "generation=" << to_string(cfg.generation) << "\n";
    if (cfg.domain_kind) {
        out << "domain=" << to_string(*cfg.domain_kind) << "\n";
        out << "d=" << cfg.domain_d << "\n";
    }
    if (cfg.localsearch.kind != LocalSearchKind::None) {
        out << "localsearch=" << to_string(cfg.localsearch.kind) << "\n";
        if (cfg.localsearch.kind == LocalSearchKind::Ialt)
            out << "laux=" << cfg.localsearch.laux << "\n";
        if (cfg.localsearch.kind == LocalSearchKind::Imp)
            out << "impparam=" << cfg.localsearch.imp_param << "\n";
    }
    if (cfg.localsearch2.kind != LocalSearchKind::None) {
        out << "localsearch2=" << to_string(cfg.localsearch2.kind) << "\n";
        if (cfg.localsearch2.kind == LocalSearchKind::Ialt)
            out << "laux2=" << cfg.localsearch2.laux << "\n";
        if (cfg.localsearch2.kind == LocalSearchKind::Imp)
            out << "impparam2=" << cfg.localsearch2.imp_param << "\n";
    }
    switch (cfg.algorithm) {
        case Algorithm::Ga:
            out << "population=" << cfg.ga.population << "\n";
            out << "lambda=" << cfg.ga.lambda << "\n";
            out << "selection=" << to_string(cfg.ga.selection) << "\n";
            out << "crossover=" << to_string(cfg.ga.crossover) << "\n";
            out << "mutation=" << to_string(cfg.ga.mutation_mode) << "\n";
            out << "mutation_prob=" << cfg.ga.mutation_prob << "\n";
            out << "replacement=" << to_string(cfg.ga.replacement) << "\n";
            break;
        case Algorithm::Ils:
            out << "shake=" << to_string(cfg.shake_mode) << "\n";
            out << "npert=" << cfg.ils.npert << "\n";
            break;
        case Algorithm::Pso:
            out << "population=" << cfg.pso.population << "\n";
            out << "omega=" << cfg.pso.omega << "\n";
            out << "phi_p=" << cfg.pso.phi_p << "\n";
            out << "phi_g=" << cfg.pso.phi_g << "\n";
            break;
        case Algorithm::Sa:
            out << "shake=" << to_string(cfg.shake_mode) << "\n";
            out << "next=" << to_string(cfg.sa.next) << "\n";
            out << "t0=" << cfg.sa.t0 << "\n";
            out << "cooling=" << to_string(cfg.sa.cooling) << "\n";
            if (cfg.sa.cooling == CoolingKind::Exp)
                out << "cooling_opt=" << cfg.sa.cooling_opt << "\n";
            break;
        case Algorithm::Vns:
            out << "shake=" << to_string(cfg.shake_mode) << "\n";
            out << "next=" << to_string(cfg.vns.next) << "\n";
            out << "k_max=" << cfg.vns.k_max << "\n";
            out << "K=" << cfg.vns.k_big << "\n";
            out << "accept=" << to_string(cfg.vns.accept) << "\n";
            if (cfg.vns.accept == AcceptKind::Prob)
                out << "accept_prob=" << cfg.vns.accept_prob << "\n";
            break;
    }
    out << "seed=" << cfg.seed << "\n";
    return out.str();
}

AlgorithmConfig preset_config(Algorithm a) {
    AlgorithmConfig cfg;
    cfg.algorithm = a;
    switch (a) {
        case Algorithm::Ga:
            cfg.iter_budget = IterBudgetKind::Np5;
            cfg.generation = GenerationKind::Rand;
            cfg.domain_kind = DomainKind::Quad;
            cfg.domain_d = 20;
            cfg.ga = GaConfig{14, 10, SelectionKind::Better, CrossoverKind::CupCap,
                              ShakeMode::Rand, 0.91, ReplacementKind::Comma};
            break;
        case Algorithm::Ils:
            cfg.iter_budget = IterBudgetKind::M1;
            cfg.generation = GenerationKind::Rand100;
            cfg.domain_kind = DomainKind::Near;
            cfg.domain_d = 29;
            cfg.localsearch = LocalSearchConfig{LocalSearchKind::Ialt, 9, 1};
            cfg.shake_mode = ShakeMode::Close;
            cfg.ils.npert = 6;
            break;
        case Algorithm::Pso:
            cfg.iter_budget = IterBudgetKind::N2_100;
            cfg.generation = GenerationKind::Rand;
            cfg.pso = PsoConfig{29, 0.0001, 0.53, 0.69};
            break;
        case Algorithm::Sa:
            cfg.iter_budget = IterBudgetKind::N2_100;
            cfg.generation = GenerationKind::Rand100;
            cfg.domain_kind = DomainKind::Quad;
            cfg.domain_d = 34;
            cfg.localsearch = LocalSearchConfig{LocalSearchKind::Ialt, 16, 1};
            cfg.shake_mode = ShakeMode::Rand;
            cfg.sa = SaConfig{NextKind::Seq, 4.45, CoolingKind::Exp, 0.39};
            break;
        case Algorithm::Vns:
            cfg.iter_budget = IterBudgetKind::M1;
            cfg.generation = GenerationKind::Rand100;
            cfg.domain_kind = DomainKind::Near;
            cfg.domain_d = 49;
            cfg.localsearch = LocalSearchConfig{LocalSearchKind::Imp, 9, 2};
            cfg.localsearch2 = LocalSearchConfig{LocalSearchKind::Ialt, 16, 1};
            cfg.shake_mode = ShakeMode::Close;
            cfg.vns = VnsConfig{NextKind::Seq, 5, 57, AcceptKind::Elitist, 0.1};
            break;
    }
    cfg.validate();
    return cfg;
}

}  // namespace pmedian
