#pragma once

#include <map>
#include <optional>
#include <string>

#include "edaudit/types.hpp"

namespace edaudit {

// A scorable behavioural property: its id, bounded score range, and whether
// context is part of what is scored. The catalog decouples claim validation
// from scorer construction.
struct PropertyInfo {
    std::string id;
    ScoreRange range;
    bool context_dependent = false;
};

class PropertyCatalog {
public:
    // Catalog preloaded with the rate-style properties audits use out of the
    // box; all on [0,1], context-independent.
    static PropertyCatalog builtin();

    void add(PropertyInfo info);
    const PropertyInfo* find(const std::string& property_id) const;
    bool contains(const std::string& property_id) const { return find(property_id) != nullptr; }

private:
    std::map<std::string, PropertyInfo> entries_;
};

}  // namespace edaudit
