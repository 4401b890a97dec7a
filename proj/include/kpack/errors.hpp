#pragma once

#include <stdexcept>
#include <string>

namespace kpack {

// Boundaries of two distinct members touch tangentially, share a segment,
// or meet at a vertex. Callers must perturb or reject the input.
struct DegenerateContact : std::runtime_error {
    explicit DegenerateContact(const std::string& what) : std::runtime_error(what) {}
};

// A family violates general position: tangency, shared boundary segment,
// shared vertex, or three boundaries through one point. Carries the ids of
// the offending members and the locus where they meet.
struct GeneralPositionViolation : std::runtime_error {
    GeneralPositionViolation(std::string members_, std::string locus_)
        : std::runtime_error("general position violation between [" + members_ +
                             "] at " + locus_),
          members(std::move(members_)),
          locus(std::move(locus_)) {}
    std::string members;
    std::string locus;
};

// Some point lies in three or more members, where at most two were allowed.
struct TripleIntersection : std::runtime_error {
    explicit TripleIntersection(const std::string& what) : std::runtime_error(what) {}
};

// Raster oracle grid cells are too large for the smallest arrangement feature.
struct ResolutionTooCoarse : std::runtime_error {
    explicit ResolutionTooCoarse(const std::string& what) : std::runtime_error(what) {}
};

// A combinatorial search exceeded its node budget. Signals the instance is
// too large for exhaustive search, not that the object searched for is absent.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyGraph : std::runtime_error {
    explicit EmptyGraph(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyHypergraph : std::runtime_error {
    explicit EmptyHypergraph(const std::string& what) : std::runtime_error(what) {}
};

// A generator ran out of rejection-sampling retries.
struct GenerationFailed : std::runtime_error {
    explicit GenerationFailed(const std::string& what) : std::runtime_error(what) {}
};

// Malformed family / manifest input.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kpack
