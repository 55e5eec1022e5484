#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ceeflow {

/// Non-negative contingency table. All-zero rows and columns are dropped at
/// construction and reported; the remaining grand total must be positive.
class ContingencyTable {
public:
    ContingencyTable(std::vector<std::string> row_ids, std::vector<std::string> col_ids,
                     Eigen::MatrixXd counts);

    const std::vector<std::string>& row_ids() const { return row_ids_; }
    const std::vector<std::string>& col_ids() const { return col_ids_; }
    const Eigen::MatrixXd& counts() const { return counts_; }
    const std::vector<std::string>& dropped_rows() const { return dropped_rows_; }
    const std::vector<std::string>& dropped_cols() const { return dropped_cols_; }

    double grand_total() const { return counts_.sum(); }
    Eigen::VectorXd row_masses() const;
    Eigen::VectorXd col_masses() const;

private:
    std::vector<std::string> row_ids_, col_ids_;
    Eigen::MatrixXd counts_;
    std::vector<std::string> dropped_rows_, dropped_cols_;
};

struct CAResult {
    std::vector<std::string> row_ids, col_ids;
    Eigen::VectorXd singular_values;    // descending, kept axes only
    Eigen::VectorXd inertia_share_pct;  // per kept axis, relative to total_inertia
    double total_inertia = 0;           // chi-square / grand total, all axes
    Eigen::MatrixXd row_coords, col_coords;      // principal coordinates
    Eigen::MatrixXd row_standard, col_standard;  // standard coordinates
    Eigen::VectorXd row_masses, col_masses;

    int n_axes() const { return static_cast<int>(singular_values.size()); }
};

/// Correspondence analysis: SVD of the standardized residual matrix
/// D_r^{-1/2} (P - r c^T) D_c^{-1/2} with P = counts / grand total.
/// Axis signs are fixed so the column with the largest absolute principal
/// coordinate on each axis is positive. n_axes <= 0 keeps every non-trivial
/// axis; a table with no residual structure yields zero axes and inertia 0.
CAResult ca_fit(const ContingencyTable& table, int n_axes = 0);

/// Supplementary rows via the transition formula: each profile (normalized to
/// sum 1 over the fitted columns) times the standard column coordinates.
/// Does not alter the fit.
Eigen::MatrixXd project_supplementary(const CAResult& result, const Eigen::MatrixXd& profiles);

struct TrajectoryPoint {
    int year;
    double x, y;  // coordinates on axes 1 and 2 (0 when the axis is absent)
};

struct TrajectorySet {
    std::map<std::string, std::vector<TrajectoryPoint>> by_country;  // year-ascending
    std::vector<std::string> warnings;  // countries missing years observed elsewhere
};

/// Default analysis years for trade trajectories.
std::span<const int> default_trajectory_years();

/// Row ids must look like "COUNTRY:YEAR" with years drawn from
/// `analysis_years`. Countries missing a year that other countries have get a
/// warning, not an error.
TrajectorySet build_trajectories(const CAResult& result,
                                 std::span<const int> analysis_years = default_trajectory_years());

struct AxisEntry {
    std::string row_id;
    double coord;
};

/// Rows of one axis sorted by coordinate (ascending, ties by id), with the
/// negative/non-negative split exposed for reporting.
struct AxisReport {
    int axis = 0;
    std::vector<AxisEntry> entries;

    std::vector<AxisEntry> negatives() const;
    std::vector<AxisEntry> positives() const;  // coord >= 0
};

AxisReport axis_report(const CAResult& result, int axis);

}  // namespace ceeflow
