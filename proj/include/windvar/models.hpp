#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "windvar/data.hpp"

namespace windvar {

/// The model family ladder: univariate AR and its diurnal / mode-dummy /
/// conditional extensions, their vector counterparts, and the persistence
/// benchmark. Conditional families (CAR, CVAR) hold one coefficient set
/// per atmospheric mode, selected by the mode at forecast issue time.
enum class Family {
    Persistence,
    AR,
    ARX_Diurnal,
    ARX_Diurnal_ModeDummies,
    CAR,
    VAR,
    VAR_Diurnal,
    VAR_Diurnal_ModeDummies,
    CVAR,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

bool family_is_univariate(Family f);     // per-site fits with own lags only
bool family_is_conditional(Family f);    // CAR, CVAR
bool family_has_hour_dummies(Family f);  // all except Persistence, AR, VAR
bool family_has_mode_dummies(Family f);  // *_ModeDummies
bool family_needs_modes(Family f);       // conditional or mode-dummy

struct ModelSpec {
    Family family = Family::VAR_Diurnal;
    int p = 3;                            // lag order
    std::vector<int> horizons = {1, 2, 3, 4, 5, 6};
    std::vector<int> hours = default_hours();
    int mode_count = 1;                   // M; 1 when unconditioned
    bool clamp_negative = true;

    void validate() const;  // throws DomainError
    /// Number of mode partitions fitted: M for conditional families, 1 otherwise.
    int partitions() const;
};

/// Options for one design-matrix build. `fit` derives these from a
/// ModelSpec; tests may use them directly.
struct DesignOptions {
    int p = 1;
    int tau = 1;
    bool lags_all_sites = true;         // false: own lags of `site` only
    Eigen::Index site = -1;             // target site for univariate builds
    bool hour_dummy = false;
    std::vector<int> hours;             // required when hour_dummy
    int mode_dummy_count = 0;           // M; emits M-1 indicators (mode 1 reference)
    int condition_mode = 0;             // keep only rows with issue mode == s (0 = off)
    const std::vector<char>* issue_allowed = nullptr;  // per-issue-time row filter (size T)
};

/// Stacked regression rows for one (horizon, mode) partition.
struct DesignSet {
    Eigen::MatrixXd X;
    Eigen::MatrixXd Y;
    std::vector<Eigen::Index> issue_index;  // per retained row
    int tau = 1;
    int mode = 0;  // partition label, 0 = unconditional
    Eigen::Index dropped_missing = 0;
};

/// Rows use issue times i with p <= i <= T - tau (1-based): lag block
/// newest-first, then hour dummies, then mode dummies; target is the
/// measurement vector at i + tau. Rows containing any missing value are
/// dropped and counted. Throws InsufficientDataError when nothing remains.
DesignSet build_design(const PanelSeries& panel, const ModeSeries* modes, const DesignOptions& opts);

struct OlsResult {
    Eigen::MatrixXd coeff;  // N x F, forecast = coeff * x
    bool ridge = false;     // regularized fallback taken
    double residual_rms = 0.0;
    Eigen::Index rows = 0;
};

/// Least squares through the normal equations. When X'X is singular or the
/// solution fails the residual-orthogonality check, refits with a ridge of
/// lambda = 1e-8 * trace(X'X) / cols and flags it.
OlsResult ols_fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y);

struct FittedModel {
    int tau = 1;
    int mode = 1;           // partition, 1..partitions()
    Eigen::MatrixXd coeff;  // N x F
    bool ridge = false;
    double residual_rms = 0.0;
    Eigen::Index rows_used = 0;
    Eigen::Index rows_dropped = 0;
};

/// Per-(horizon, mode) coefficient matrices for one model family. Sites are
/// stored (and computed) in name-sorted order, so fits and forecasts do not
/// depend on the column order of the input panel.
struct FittedModelSet {
    ModelSpec spec;
    std::vector<std::string> sites;     // canonical (sorted) order
    std::vector<std::string> features;  // column names of the design
    std::vector<FittedModel> models;    // horizons-major, partitions-minor

    const FittedModel& at(int tau, int mode_partition) const;
    bool has_coefficients() const { return spec.family != Family::Persistence; }
};

/// Estimate every (horizon, mode) coefficient matrix by OLS. Conditional
/// and mode-dummy families require `modes` aligned with the panel. Fits for
/// distinct (horizon, mode) pairs run in parallel over `jobs` threads.
/// `issue_allowed`, when given, restricts estimation to issue times with a
/// non-zero entry (used by cross-validation to hold out test blocks).
FittedModelSet fit(const PanelSeries& panel, const ModeSeries* modes, const ModelSpec& spec,
                   int jobs = 0, const std::vector<char>* issue_allowed = nullptr);

/// One multi-site forecast. `fallback[n]` marks sites forecast by
/// persistence-from-latest-observation because a required lag was missing.
struct ForecastVec {
    Eigen::VectorXd value;     // clamped when spec.clamp_negative
    Eigen::VectorXd raw;       // pre-clamp values
    std::vector<char> fallback;
};

/// Forecast y(t + tau | t) in the model's site order. Throws DomainError
/// when t is out of range or the issue-time mode label exceeds the spec.
ForecastVec forecast(const FittedModelSet& model, const PanelSeries& panel, const ModeSeries* modes,
                     Eigen::Index t, int tau);

struct ForecastRecord {
    Eigen::Index issue_index;
    int horizon;
    int site;  // index into ForecastSet::sites
    double value;
    double raw;
    bool fallback;
};

struct ForecastSet {
    std::string family;
    std::vector<std::string> sites;
    HourStamp start = 0;  // panel start, for issue_index -> time
    int step_hours = 1;
    std::vector<ForecastRecord> records;

    HourStamp issue_time(const ForecastRecord& r) const {
        return start + static_cast<HourStamp>(r.issue_index) * step_hours;
    }
};

/// Forecast every issue time in [t0, t1] for every horizon. Record order is
/// (issue, horizon, site), independent of the number of jobs.
ForecastSet rolling_forecast(const FittedModelSet& model, const PanelSeries& panel,
                             const ModeSeries* modes, Eigen::Index t0, Eigen::Index t1,
                             const std::vector<int>& horizons, int jobs = 0);

void save_model_set(const FittedModelSet& model, const std::filesystem::path& path);
FittedModelSet load_model_set(const std::filesystem::path& path);

void write_forecast_csv(const ForecastSet& set, const std::filesystem::path& path);
ForecastSet load_forecast_csv(const std::filesystem::path& path, int step_hours = 1);

}  // namespace windvar
