#include "cherry/generation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cherry/algorithms.hpp"
#include "cherry/construction.hpp"
#include "cherry/error.hpp"

namespace cherry {

namespace {

void erase_sorted(std::vector<std::size_t>& v, std::size_t x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
}

void insert_sorted(std::vector<std::size_t>& v, std::size_t x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}

} // namespace

Sequence random_tcs(std::size_t n, std::size_t r, Rng& rng, bool binary) {
    if (n < 2) throw DomainError("random_tcs needs at least two leaves");
    // Taxa are 1..n; Y is always {1..|Y|}, so it is just a count.
    std::size_t y_size = 2;
    std::vector<std::size_t> nf{2};
    std::size_t left = n - 2, retics = r;
    std::vector<Pair> reversed{Pair("2", "1")};
    reversed.reserve(n + r);

    while (left > 0 || retics > 0) {
        bool leaf_step;
        if (!nf.empty() && left > 0 && retics > 0)
            leaf_step = rng.chance(left, left + retics);
        else if (!nf.empty() && retics > 0)
            leaf_step = false;
        else if (left > 0)
            leaf_step = true;
        else if (binary)
            throw DomainError("no binary tree-child network with " + std::to_string(n) + " leaves and " +
                              std::to_string(r) + " reticulations");
        else
            throw std::logic_error("random_tcs ran out of non-forbidden taxa");

        std::size_t first;
        if (leaf_step) {
            first = ++y_size;
            --left;
            insert_sorted(nf, first);
        } else {
            first = nf[rng.below(nf.size())];
            --retics;
            if (binary) erase_sorted(nf, first);
        }
        // Y \ {first} in ascending order is 1..y_size with first skipped.
        std::size_t second = 1 + rng.below(y_size - 1);
        if (second >= first) ++second;
        erase_sorted(nf, second);
        reversed.emplace_back(std::to_string(first), std::to_string(second));
    }
    std::reverse(reversed.begin(), reversed.end());
    return Sequence(std::move(reversed));
}

Sequence random_sub_tcs(const Sequence& s, std::size_t r_prime, Rng& rng) {
    if (!check_tcs(s)) throw DomainError("random_sub_tcs needs a tree-child sequence");
    std::map<Taxon, std::vector<std::size_t>, decltype(&natural_less)> firsts(&natural_less);
    for (std::size_t i = 0; i < s.size(); ++i) firsts[s.pairs()[i].first].push_back(i);
    if (r_prime > s.size() - firsts.size())
        throw DomainError("cannot keep " + std::to_string(r_prime) + " extra pairs out of " +
                          std::to_string(s.size() - firsts.size()));

    std::vector<bool> keep(s.size(), false);
    for (const auto& [taxon, idx] : firsts) keep[idx[rng.below(idx.size())]] = true;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!keep[i]) rest.push_back(i);
    for (std::size_t j = 0; j < r_prime; ++j) {
        std::size_t k = j + rng.below(rest.size() - j);
        std::swap(rest[j], rest[k]);
        keep[rest[j]] = true;
    }

    std::vector<Pair> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (keep[i]) out.push_back(s.pairs()[i]);
    Sequence sub(std::move(out));
    // Each first-coordinate taxon keeps a pair and the last kept pair ends on
    // the input's survivor, so no taxon can go missing.
    if (taxa_of(sub).size() != taxa_of(s).size()) throw std::logic_error("random_sub_tcs dropped a taxon");
    return sub;
}

std::string to_string(InstanceKind k) { return k == InstanceKind::Yes ? "yes" : "no"; }

std::uint64_t instance_seed(std::uint64_t base_seed, std::size_t n, std::size_t r, std::size_t r_prime,
                            InstanceKind kind, std::size_t replicate) {
    std::uint64_t h = mix_seed(base_seed, n);
    h = mix_seed(h, r);
    h = mix_seed(h, r_prime);
    h = mix_seed(h, kind == InstanceKind::Yes ? 1 : 2);
    return mix_seed(h, replicate);
}

Instance make_instance(std::size_t n, std::size_t r, std::size_t r_prime, InstanceKind kind,
                       std::uint64_t base_seed, std::size_t replicate) {
    if (r_prime > r) throw DomainError("r_prime must not exceed r");
    const CpnClass tree_child_class{CherryRule::Resolved1a, RetRule::MergeRetic2b};
    Instance inst;
    inst.kind = kind;
    inst.n = n;
    inst.r = r;
    inst.r_prime = r_prime;
    inst.seed = instance_seed(base_seed, n, r, r_prime, kind, replicate);
    Rng rng(inst.seed);
    Sequence big = random_tcs(n, r, rng);
    inst.big = build_from_cps(big, tree_child_class);
    Sequence small = kind == InstanceKind::Yes ? random_sub_tcs(big, r_prime, rng) : random_tcs(n, r_prime, rng);
    inst.small = build_from_cps(small, tree_child_class);
    return inst;
}

} // namespace cherry
