#include "edaudit/property_catalog.hpp"

namespace edaudit {

PropertyCatalog PropertyCatalog::builtin() {
    PropertyCatalog catalog;
    for (const char* id : {"scheming_rate", "covert_action_rate", "destructive_action_rate",
                           "task_success_rate", "refusal_rate", "sycophancy_rate",
                           "verbalised_recognition_rate"}) {
        catalog.add(PropertyInfo{id, ScoreRange{0.0, 1.0}, false});
    }
    return catalog;
}

void PropertyCatalog::add(PropertyInfo info) {
    entries_[info.id] = std::move(info);
}

const PropertyInfo* PropertyCatalog::find(const std::string& property_id) const {
    auto it = entries_.find(property_id);
    return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace edaudit
