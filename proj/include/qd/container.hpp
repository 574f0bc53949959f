#ifndef QD_CONTAINER_HPP
#define QD_CONTAINER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qd/types.hpp"

namespace qd {

struct AddOutcome {
    enum class Kind { AddedNew, Replaced, Rejected };
    Kind kind = Kind::Rejected;
    std::uint64_t evicted_id = 0; // set for Replaced
    const char* reason = "";      // set for Rejected

    bool accepted() const { return kind != Kind::Rejected; }

    static AddOutcome added() { return {Kind::AddedNew, 0, ""}; }
    static AddOutcome replaced(std::uint64_t evicted) { return {Kind::Replaced, evicted, ""}; }
    static AddOutcome rejected(const char* why) { return {Kind::Rejected, 0, why}; }
};

/// Collection of accepted individuals. Single-writer: add() and update()
/// run on the serialized control path; the const queries may be used
/// concurrently against a quiescent container.
class Container {
public:
    virtual ~Container() = default;

    virtual AddOutcome add(const Individual& ind) = 0;

    /// Refresh every member's cached novelty (and, for the archive, local
    /// quality) against the current contents.
    virtual void update() = 0;

    virtual std::size_t size() const = 0;

    /// Members in ascending-id order (the canonical dump/metrics order).
    virtual std::vector<const Individual*> members_by_id() const = 0;

    /// Mutable access to a resident member, or nullptr if absent.
    virtual Individual* find(std::uint64_t id) = 0;

    /// Container-specific novelty of an individual that need not be stored.
    virtual double novelty_of(const Individual& ind) const = 0;

    /// Count of the k nearest members (self excluded) with strictly lower
    /// fitness.
    virtual int local_quality_of(const Individual& ind) const = 0;

    virtual double quality_offset() const = 0;

    /// Whether the total-novelty metric is defined for this container.
    virtual bool tracks_total_novelty() const = 0;

    /// Grid cell index ("12:87") or the archive placeholder.
    virtual std::string cell_label(const Individual& ind) const = 0;
};

} // namespace qd

#endif
