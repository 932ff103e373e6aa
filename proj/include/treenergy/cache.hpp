#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "treenergy/canonical.hpp"
#include "treenergy/energy.hpp"

namespace treenergy {

// Disk cache of energy results, addressed by canonical code, engine
// version, method, and tolerance. Entries from other engine versions are
// ignored; unreadable entries are skipped with a warning and recomputed.
class EnergyCache {
  public:
    EnergyCache() = default;
    explicit EnergyCache(std::filesystem::path dir);

    bool enabled() const { return enabled_; }
    const std::filesystem::path& dir() const { return dir_; }

    std::optional<EnergyResult> lookup(const CanonicalCode& code, EnergyMethod method,
                                       double tolerance) const;
    void store(const CanonicalCode& code, EnergyMethod method, double tolerance,
               const EnergyResult& result) const;

  private:
    std::filesystem::path entry_path(const CanonicalCode& code, EnergyMethod method,
                                     double tolerance) const;

    std::filesystem::path dir_;
    bool enabled_ = false;
};

}  // namespace treenergy
