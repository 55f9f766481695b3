#include <algorithm>

#include "windvar/errors.hpp"
#include "windvar/models.hpp"

namespace windvar {

namespace {

struct FamilyInfo {
    Family family;
    const char* name;
    bool univariate;
    bool conditional;
    bool hour_dummies;
    bool mode_dummies;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::Persistence, "Persistence", false, false, false, false},
    {Family::AR, "AR", true, false, false, false},
    {Family::ARX_Diurnal, "ARX_Diurnal", true, false, true, false},
    {Family::ARX_Diurnal_ModeDummies, "ARX_Diurnal_ModeDummies", true, false, true, true},
    {Family::CAR, "CAR", true, true, true, false},
    {Family::VAR, "VAR", false, false, false, false},
    {Family::VAR_Diurnal, "VAR_Diurnal", false, false, true, false},
    {Family::VAR_Diurnal_ModeDummies, "VAR_Diurnal_ModeDummies", false, false, true, true},
    {Family::CVAR, "CVAR", false, true, true, false},
};

const FamilyInfo& info(Family f) {
    for (const auto& fi : kFamilies)
        if (fi.family == f) return fi;
    throw DomainError("unknown model family");
}

}  // namespace

std::string family_name(Family f) { return info(f).name; }

Family family_from_name(const std::string& name) {
    for (const auto& fi : kFamilies)
        if (name == fi.name) return fi.family;
    throw DomainError("unknown model family '" + name + "'");
}

bool family_is_univariate(Family f) { return info(f).univariate; }
bool family_is_conditional(Family f) { return info(f).conditional; }
bool family_has_hour_dummies(Family f) { return info(f).hour_dummies; }
bool family_has_mode_dummies(Family f) { return info(f).mode_dummies; }
bool family_needs_modes(Family f) { return info(f).conditional || info(f).mode_dummies; }

void ModelSpec::validate() const {
    if (p < 1) throw DomainError("lag order p must be >= 1");
    if (horizons.empty()) throw DomainError("at least one forecast horizon is required");
    for (int h : horizons)
        if (h < 1) throw DomainError("forecast horizons must be >= 1");
    if (mode_count < 1) throw DomainError("mode count must be >= 1");
    if (family_has_hour_dummies(family)) {
        if (hours.empty()) throw DomainError("hour set must be non-empty");
        std::vector<int> sorted = hours;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw DomainError("hour set must not contain duplicates");
    }
}

int ModelSpec::partitions() const { return family_is_conditional(family) ? mode_count : 1; }

const FittedModel& FittedModelSet::at(int tau, int mode_partition) const {
    for (const auto& m : models)
        if (m.tau == tau && m.mode == mode_partition) return m;
    throw DomainError("no fitted model for horizon " + std::to_string(tau) + ", mode " +
                      std::to_string(mode_partition));
}

}  // namespace windvar
