#pragma once

#include <array>
#include <optional>
#include <string>

#include "cherry/network.hpp"
#include "cherry/sequence.hpp"

namespace cherry {

enum class CherryRule { Resolved1a, Contracted1b };
enum class RetRule { Plain2a, MergeRetic2b, MergeTree2c, MergeBoth2d };

struct CpnClass {
    CherryRule cherry = CherryRule::Resolved1a;
    RetRule ret = RetRule::Plain2a;
    friend bool operator==(const CpnClass&, const CpnClass&) = default;
};

// "1a2a" ... "1b2d".
std::string to_string(CpnClass c);
// Throws DomainError on an unknown name.
CpnClass parse_class(const std::string& name);
const std::array<CpnClass, 8>& all_classes();

bool is_reconstructible(CpnClass c);

// Inverse of reducing p: a cherry addition when p.first is absent, a
// reticulated-cherry addition otherwise. Contractions follow the class rules.
// Throws PreconditionError if p.second is not a leaf.
void add_pair(Network& net, const Pair& p, CpnClass c);

// Starts from a single leaf (the last second coordinate, or seed_taxon for the
// empty sequence) and adds the pairs back to front.
Network build_from_cps(const Sequence& s, CpnClass c, const std::optional<Taxon>& seed_taxon = std::nullopt);

// Degree/edge-type pattern every network built under c has. Necessary, not
// sufficient, for membership in c.
bool has_class_shape(const Network& net, CpnClass c);

} // namespace cherry
