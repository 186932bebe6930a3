#pragma once

#include <string>
#include <string_view>

#include "cherry/network.hpp"
#include "cherry/sequence.hpp"

namespace cherry {

struct ParseReport {
    bool root_inserted = false;
    // Number of edge lines that repeated an earlier parent/child pair.
    std::size_t merged_edges = 0;
};

struct ParsedNetwork {
    Network net;
    ParseReport report;
};

// Lines of "parent child [multiplicity]"; '#' starts a comment. Sinks are
// leaves labeled by their names. Throws ParseError with a position; semantic
// problems (cycles, several sources, bad degrees) point at the first line
// mentioning the offending node.
ParsedNetwork parse_network(std::string_view text);

// Extended Newick with "#H<k>" hybrid tags ("#LGT" and "#R" are accepted as
// well). Branch lengths after ':' are skipped.
ParsedNetwork parse_enewick(std::string_view text);

// Picks eNewick when the first significant character is '(' or the text
// contains ';', the edge list otherwise.
ParsedNetwork parse_any_network(std::string_view text);

enum class NetworkFormat { EdgeList, ENewick };

std::string write_network(const Network& net, NetworkFormat format = NetworkFormat::EdgeList);

// One pair per line, "x y" or "x,y"; blank lines and '#' comments ignored.
Sequence parse_cps(std::string_view text);
std::string write_cps(const Sequence& s);

bool valid_taxon(std::string_view token);

} // namespace cherry
