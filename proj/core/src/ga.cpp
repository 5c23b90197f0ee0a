#include "pdptw/ga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace pdptw {

void GaConfig::validate() const
{
    auto require = [](bool ok, char const* what) {
        if (!ok) {
            throw std::invalid_argument(what);
        }
    };
    require(population >= 2, "population size must be >= 2");
    require(crossover_rate >= 0 && crossover_rate <= 1, "crossover rate must lie in [0,1]");
    require(mutation_rate >= 0 && mutation_rate <= 1, "mutation rate must lie in [0,1]");
    require(tournament >= 1, "tournament size must be >= 1");
    require(elites < population, "elite count must be smaller than the population");
}

Chromosome::Chromosome(Instance const& instance, Solution const& solution)
    : solution_(empty(instance).solution_)
{
    std::vector<bool> placed(instance.vehicles().size(), false);
    for (auto const& route : solution.routes) {
        if (!instance.has_vehicle(route.vehicle)) {
            throw std::invalid_argument("unknown vehicle " + std::to_string(route.vehicle));
        }
        auto slot = static_cast<std::size_t>(route.vehicle - 1);
        if (placed[slot]) {
            throw std::invalid_argument("vehicle " + std::to_string(route.vehicle) + " appears twice");
        }
        placed[slot] = true;
        solution_.routes[slot].visits = route.visits;
    }
}

auto Chromosome::empty(Instance const& instance) -> Chromosome
{
    Chromosome c;
    for (auto const& v : instance.vehicles()) {
        c.solution_.routes.push_back({ v.id, {} });
    }
    return c;
}

auto Chromosome::visit_count() const noexcept -> std::size_t
{
    std::size_t n = 0;
    for (auto const& r : solution_.routes) {
        n += r.visits.size();
    }
    return n;
}

auto without_empty_routes(Solution solution) -> Solution
{
    std::erase_if(solution.routes, [](Route const& r) { return r.visits.empty(); });
    return solution;
}

auto assess(Instance const& instance, Solution const& solution, Weights const& weights) -> Fitness
{
    thread_local Evaluation ev;
    evaluate(instance, solution, ev);
    return { ev.vector, aggregate(weights, ev.vector), hard_status(instance, solution, ev).feasible() };
}

auto strip_pass_through(Instance const& instance, Chromosome chromosome) -> Chromosome
{
    thread_local Evaluation ev;
    evaluate(instance, chromosome.solution(), ev);
    bool any = false;
    for (auto const& t : ev.traces) {
        any = any || std::ranges::any_of(t.visits, [](auto const& v) { return !v.serving(); });
    }
    if (!any) {
        return chromosome;
    }
    auto& solution = chromosome.edit();
    for (std::size_t r = 0; r < solution.routes.size(); ++r) {
        auto& visits = solution.routes[r].visits;
        std::size_t kept = 0;
        for (std::size_t p = 0; p < visits.size(); ++p) {
            if (ev.traces[r].visits[p].serving()) {
                visits[kept++] = visits[p];
            }
        }
        visits.resize(kept);
    }
    return chromosome;
}

namespace {

/// Groups of nonzero-quantity nodes joined by precedence links.
auto precedence_components(Instance const& instance) -> std::vector<std::vector<NodeId>>
{
    std::vector<std::size_t> parent(instance.size());
    std::iota(parent.begin(), parent.end(), std::size_t{ 0 });
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (auto const& p : instance.precedence_pairs()) {
        auto a = find(static_cast<std::size_t>(p.supplier));
        auto b = find(static_cast<std::size_t>(p.client));
        parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::vector<NodeId>> groups(instance.size());
    for (auto const& n : instance.nodes()) {
        if (n.q != 0) {
            groups[find(static_cast<std::size_t>(n.id))].push_back(n.id);
        }
    }
    std::erase_if(groups, [](auto const& g) { return g.empty(); });
    return groups;
}

/// Randomized greedy construction: whole components go to one vehicle, and each route is grown
/// by repeatedly taking a visit that can transfer now (clients only once all their suppliers
/// were served on this route), nearest-first half of the time.
auto build_individual(Instance const& instance, std::vector<std::vector<NodeId>> const& components, bool single,
    Rng& rng) -> Chromosome
{
    auto const fleet = instance.vehicles().size();
    std::vector<std::size_t> chosen(fleet);
    std::iota(chosen.begin(), chosen.end(), std::size_t{ 0 });
    if (single) {
        auto widest = std::ranges::max_element(instance.vehicles(), {}, &VehicleSpec::capacity);
        chosen = { static_cast<std::size_t>(widest - instance.vehicles().begin()) };
    } else {
        rng.shuffle(std::span(chosen));
        chosen.resize(1 + rng.index(fleet));
    }

    std::vector<std::vector<NodeId>> assigned(fleet);
    for (auto const& group : components) {
        auto& bucket = assigned[chosen[rng.index(chosen.size())]];
        bucket.insert(bucket.end(), group.begin(), group.end());
    }

    auto chromosome = Chromosome::empty(instance);
    auto& solution = chromosome.edit();
    auto remaining = initial_remaining(instance);
    std::vector<bool> served(instance.size(), false);
    std::vector<NodeId> eligible;

    for (std::size_t k = 0; k < fleet; ++k) {
        auto const& vehicle = instance.vehicles()[k];
        double load = 0;
        NodeId at = kDepot;
        auto& route = solution.routes[k].visits;
        for (;;) {
            eligible.clear();
            for (auto id : assigned[k]) {
                auto rest = remaining[static_cast<std::size_t>(id)];
                if (rest > kEpsilon && load < vehicle.capacity - kEpsilon) {
                    eligible.push_back(id);
                } else if (rest < -kEpsilon && load > kEpsilon) {
                    auto sup = instance.suppliers_of(id);
                    if (std::ranges::all_of(sup, [&](NodeId s) { return served[static_cast<std::size_t>(s)]; })) {
                        eligible.push_back(id);
                    }
                }
            }
            if (eligible.empty()) {
                break;
            }
            NodeId next = eligible.front();
            if (rng.bernoulli(0.5)) {
                double best = std::numeric_limits<double>::infinity();
                for (auto id : eligible) {
                    auto d = instance.distance(at, id);
                    if (d && *d < best) {
                        best = *d;
                        next = id;
                    }
                }
            } else {
                next = eligible[rng.index(eligible.size())];
            }
            auto& rest = remaining[static_cast<std::size_t>(next)];
            double amount = rest > 0 ? std::min(rest, vehicle.capacity - load) : -std::min(-rest, load);
            load += amount;
            rest -= amount;
            if (std::abs(rest) <= kEpsilon) {
                rest = 0;
            }
            served[static_cast<std::size_t>(next)] = true;
            route.push_back(next);
            at = next;
        }
    }
    return chromosome;
}

} // namespace

auto init_population(Instance const& instance, GaConfig const& config, Rng& rng) -> std::vector<Chromosome>
{
    config.validate();
    auto const components = precedence_components(instance);
    if (components.empty()) {
        return std::vector<Chromosome>(config.population, Chromosome::empty(instance));
    }
    double max_capacity = 0;
    for (auto const& v : instance.vehicles()) {
        max_capacity = std::max(max_capacity, v.capacity);
    }
    if (instance.vehicles().empty() || max_capacity <= 0) {
        throw ConstructionError("the fleet has no capacity but the instance has nonzero demand or supply");
    }
    if (instance.total_demand() > instance.total_supply() + kEpsilon) {
        throw ConstructionError("total demand exceeds total supply");
    }

    constexpr int kAttempts = 64;
    std::vector<Chromosome> population;
    population.reserve(config.population);
    for (std::size_t i = 0; i < config.population; ++i) {
        std::optional<Chromosome> made;
        for (int attempt = 0; attempt < kAttempts && !made; ++attempt) {
            made = repair(instance, build_individual(instance, components, false, rng));
        }
        if (!made) {
            made = repair(instance, build_individual(instance, components, true, rng));
        }
        if (made) {
            population.push_back(std::move(*made));
        }
    }
    if (population.empty()) {
        throw ConstructionError("no feasible individual could be constructed");
    }
    for (std::size_t i = 0; population.size() < config.population; ++i) {
        population.push_back(population[i]);
    }
    return population;
}

namespace {

auto make_child(Chromosome const& a, Chromosome const& b, Instance const& instance, Rng& rng) -> Chromosome
{
    auto const& ra = a.solution().routes;
    auto const& rb = b.solution().routes;
    auto const fleet = ra.size();

    std::vector<std::size_t> nonempty;
    for (std::size_t k = 0; k < fleet; ++k) {
        if (!ra[k].visits.empty()) {
            nonempty.push_back(k);
        }
    }
    std::vector<bool> taken(fleet, false);
    for (std::size_t k = 0; k < fleet; ++k) {
        taken[k] = rng.bernoulli(0.5);
    }

    auto child = Chromosome::empty(instance);
    auto& routes = child.edit().routes;
    std::optional<std::size_t> cut_route;
    std::size_t cut_at = 0;
    if (!nonempty.empty()) {
        auto k = nonempty[rng.index(nonempty.size())];
        auto const& v = ra[k].visits;
        auto first = rng.index(v.size());
        auto last = first + 1 + rng.index(v.size() - first);
        taken[k] = true;
        cut_route = k;
        cut_at = first;
        routes[k].visits.assign(v.begin() + static_cast<std::ptrdiff_t>(first), v.begin() + static_cast<std::ptrdiff_t>(last));
    }
    for (std::size_t k = 0; k < fleet; ++k) {
        if (taken[k] && cut_route != k) {
            routes[k].visits = ra[k].visits;
        }
    }

    thread_local Evaluation ev;
    evaluate(instance, child.solution(), ev);
    auto missing = [&](NodeId id) { return std::abs(ev.remaining[static_cast<std::size_t>(id)]) > kEpsilon; };

    auto& out = child.edit().routes;
    for (std::size_t k = 0; k < fleet; ++k) {
        std::vector<NodeId> filtered;
        for (auto id : rb[k].visits) {
            if (missing(id)) {
                filtered.push_back(id);
            }
        }
        if (!taken[k]) {
            out[k].visits = std::move(filtered);
        } else if (cut_route == k) {
            auto at = std::min(cut_at, filtered.size());
            filtered.insert(filtered.begin() + static_cast<std::ptrdiff_t>(at), out[k].visits.begin(), out[k].visits.end());
            out[k].visits = std::move(filtered);
        } else {
            out[k].visits.insert(out[k].visits.end(), filtered.begin(), filtered.end());
        }
    }

    auto fixed = repair(instance, strip_pass_through(instance, std::move(child)));
    return fixed ? std::move(*fixed) : a;
}

} // namespace

auto crossover(Chromosome const& parent_a, Chromosome const& parent_b, Instance const& instance, Rng& rng)
    -> std::pair<Chromosome, Chromosome>
{
    auto first = make_child(parent_a, parent_b, instance, rng);
    auto second = make_child(parent_b, parent_a, instance, rng);
    return { std::move(first), std::move(second) };
}

auto mutate(Chromosome const& chromosome, Instance const& instance, GaConfig const& /*config*/, Rng& rng) -> Chromosome
{
    auto out = chromosome;
    auto& routes = out.edit().routes;
    switch (rng.index(3)) {
    case 0: { // swap two visits of one route
        std::vector<std::size_t> candidates;
        for (std::size_t k = 0; k < routes.size(); ++k) {
            if (routes[k].visits.size() >= 2) {
                candidates.push_back(k);
            }
        }
        if (!candidates.empty()) {
            auto& v = routes[candidates[rng.index(candidates.size())]].visits;
            auto i = rng.index(v.size());
            auto j = rng.index(v.size() - 1);
            if (j >= i) {
                ++j;
            }
            std::swap(v[i], v[j]);
        }
        break;
    }
    case 1: { // relocate one visit anywhere in the fleet
        auto total = out.visit_count();
        if (total > 0) {
            auto pick = rng.index(total);
            std::size_t k = 0;
            while (pick >= routes[k].visits.size()) {
                pick -= routes[k].visits.size();
                ++k;
            }
            auto node = routes[k].visits[pick];
            routes[k].visits.erase(routes[k].visits.begin() + static_cast<std::ptrdiff_t>(pick));
            auto& target = routes[rng.index(routes.size())].visits;
            auto at = rng.index(target.size() + 1);
            target.insert(target.begin() + static_cast<std::ptrdiff_t>(at), node);
        }
        break;
    }
    default: { // merge two routes
        std::vector<std::size_t> used;
        for (std::size_t k = 0; k < routes.size(); ++k) {
            if (!routes[k].visits.empty()) {
                used.push_back(k);
            }
        }
        if (used.size() >= 2) {
            auto i = rng.index(used.size());
            auto j = rng.index(used.size() - 1);
            if (j >= i) {
                ++j;
            }
            auto& into = routes[used[i]].visits;
            auto& from = routes[used[j]].visits;
            into.insert(into.end(), from.begin(), from.end());
            from.clear();
        }
        break;
    }
    }
    if (out == chromosome) {
        return chromosome;
    }
    auto fixed = repair(instance, strip_pass_through(instance, std::move(out)));
    return fixed ? std::move(*fixed) : chromosome;
}

namespace {

void assess_all(Instance const& instance, std::vector<Chromosome>& population, GaConfig const& config,
    std::uint64_t& evaluations)
{
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (!population[i].fitness()) {
            pending.push_back(i);
        }
    }
    evaluations += pending.size();
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < pending.size(); i += step) {
            auto& c = population[pending[i]];
            c.set_fitness(assess(instance, c.solution(), config.weights));
        }
    };
    auto workers = std::min(config.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.threads,
        pending.size());
    if (workers <= 1) {
        work(0, 1);
        return;
    }
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back(work, t, workers);
    }
}

auto tournament(std::vector<Chromosome> const& population, std::size_t size, Rng& rng) -> std::size_t
{
    auto best = rng.index(population.size());
    for (std::size_t i = 1; i < size; ++i) {
        auto other = rng.index(population.size());
        if (population[other].fitness()->aggregate < population[best].fitness()->aggregate) {
            best = other;
        }
    }
    return best;
}

auto population_best(std::vector<Chromosome> const& population) -> std::size_t
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i) {
        if (population[i].fitness()->aggregate < population[best].fitness()->aggregate) {
            best = i;
        }
    }
    return best;
}

} // namespace

auto evolve(Instance const& instance, GaConfig const& config) -> SolveResult
{
    config.validate();
    Rng rng(config.seed);
    SolveResult result;
    result.config = config;
    result.front = ParetoArchive(config.archive_capacity);

    auto population = init_population(instance, config, rng);
    auto record = [&](std::span<Chromosome const> members) {
        for (auto const& c : members) {
            if (c.fitness()->feasible) {
                result.front.insert(without_empty_routes(c.solution()), c.fitness()->vector);
            }
        }
    };
    assess_all(instance, population, config, result.evaluations);
    record(population);

    auto champion = population[population_best(population)];
    result.history.push_back(champion.fitness()->aggregate);
    std::size_t stale = 0;

    for (std::size_t gen = 0; gen < config.generations; ++gen) {
        std::vector<std::size_t> order(population.size());
        std::iota(order.begin(), order.end(), std::size_t{ 0 });
        std::ranges::stable_sort(order, [&](auto a, auto b) {
            return population[a].fitness()->aggregate < population[b].fitness()->aggregate;
        });

        std::vector<Chromosome> next;
        next.reserve(config.population);
        for (std::size_t e = 0; e < config.elites; ++e) {
            next.push_back(population[order[e]]);
        }
        std::size_t const carried = next.size();
        while (next.size() < config.population) {
            auto const& a = population[tournament(population, config.tournament, rng)];
            auto const& b = population[tournament(population, config.tournament, rng)];
            std::pair<Chromosome, Chromosome> children{ a, b };
            if (rng.bernoulli(config.crossover_rate)) {
                children = crossover(a, b, instance, rng);
            }
            for (auto* child : { &children.first, &children.second }) {
                if (next.size() == config.population) {
                    break;
                }
                if (rng.bernoulli(config.mutation_rate)) {
                    *child = mutate(*child, instance, config, rng);
                }
                next.push_back(std::move(*child));
            }
        }
        population = std::move(next);
        assess_all(instance, population, config, result.evaluations);
        record(std::span(population).subspan(carried));

        auto const& best = population[population_best(population)];
        result.history.push_back(best.fitness()->aggregate);
        if (best.fitness()->aggregate < champion.fitness()->aggregate) {
            champion = best;
            stale = 0;
        } else if (config.stagnation_limit > 0 && ++stale >= config.stagnation_limit) {
            break;
        }
    }

    result.best = without_empty_routes(champion.solution());
    result.vector = champion.fitness()->vector;
    result.aggregate = champion.fitness()->aggregate;
    return result;
}

} // namespace pdptw
