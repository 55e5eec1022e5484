#include "ceeflow/ca.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ceeflow/errors.hpp"

namespace ceeflow {

ContingencyTable::ContingencyTable(std::vector<std::string> row_ids,
                                   std::vector<std::string> col_ids, Eigen::MatrixXd counts) {
    if (static_cast<std::size_t>(counts.rows()) != row_ids.size() ||
        static_cast<std::size_t>(counts.cols()) != col_ids.size())
        throw ValidationError("contingency table: label/matrix shape mismatch");
    if ((counts.array() < 0).any())
        throw ValidationError("contingency table: negative counts");
    if (!counts.allFinite())
        throw ValidationError("contingency table: non-finite counts");

    std::vector<Eigen::Index> keep_rows, keep_cols;
    for (Eigen::Index i = 0; i < counts.rows(); ++i) {
        if (counts.row(i).sum() > 0)
            keep_rows.push_back(i);
        else
            dropped_rows_.push_back(row_ids[i]);
    }
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
        if (counts.col(j).sum() > 0)
            keep_cols.push_back(j);
        else
            dropped_cols_.push_back(col_ids[j]);
    }
    if (keep_rows.empty() || keep_cols.empty())
        throw ValidationError("contingency table: grand total is zero");

    counts_.resize(keep_rows.size(), keep_cols.size());
    for (std::size_t i = 0; i < keep_rows.size(); ++i)
        for (std::size_t j = 0; j < keep_cols.size(); ++j)
            counts_(i, j) = counts(keep_rows[i], keep_cols[j]);
    for (auto i : keep_rows) row_ids_.push_back(row_ids[i]);
    for (auto j : keep_cols) col_ids_.push_back(col_ids[j]);
}

Eigen::VectorXd ContingencyTable::row_masses() const {
    return counts_.rowwise().sum() / grand_total();
}

Eigen::VectorXd ContingencyTable::col_masses() const {
    return counts_.colwise().sum().transpose() / grand_total();
}

CAResult ca_fit(const ContingencyTable& table, int n_axes) {
    const Eigen::Index R = table.counts().rows(), C = table.counts().cols();
    const Eigen::MatrixXd P = table.counts() / table.grand_total();
    const Eigen::VectorXd r = P.rowwise().sum();
    const Eigen::VectorXd c = P.colwise().sum().transpose();

    const Eigen::VectorXd r_isqrt = r.array().sqrt().inverse().matrix();
    const Eigen::VectorXd c_isqrt = c.array().sqrt().inverse().matrix();
    const Eigen::MatrixXd S =
        r_isqrt.asDiagonal() * (P - r * c.transpose()) * c_isqrt.asDiagonal();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();

    // non-trivial axes: centering removed one dimension, noise gets cut off
    const Eigen::Index max_axes = std::min(R, C) - 1;
    constexpr double kSigmaCutoff = 1e-12;
    Eigen::Index avail = 0;
    double total_inertia = 0;
    for (Eigen::Index k = 0; k < std::min(max_axes, sv.size()); ++k) {
        if (sv[k] <= kSigmaCutoff) break;
        total_inertia += sv[k] * sv[k];
        ++avail;
    }
    const Eigen::Index kept =
        n_axes <= 0 ? avail : std::min<Eigen::Index>(avail, n_axes);

    CAResult res;
    res.row_ids = table.row_ids();
    res.col_ids = table.col_ids();
    res.row_masses = r;
    res.col_masses = c;
    res.total_inertia = total_inertia;
    res.singular_values = sv.head(kept);
    res.inertia_share_pct.resize(kept);
    for (Eigen::Index k = 0; k < kept; ++k)
        res.inertia_share_pct[k] = 100.0 * sv[k] * sv[k] / total_inertia;

    res.row_standard = r_isqrt.asDiagonal() * svd.matrixU().leftCols(kept);
    res.col_standard = c_isqrt.asDiagonal() * svd.matrixV().leftCols(kept);
    res.row_coords = res.row_standard * sv.head(kept).asDiagonal();
    res.col_coords = res.col_standard * sv.head(kept).asDiagonal();

    // sign convention: the column with the largest |principal coordinate|
    // on each axis points in the positive direction (ties: lowest index)
    for (Eigen::Index k = 0; k < kept; ++k) {
        Eigen::Index j_max = 0;
        for (Eigen::Index j = 1; j < C; ++j)
            if (std::abs(res.col_coords(j, k)) > std::abs(res.col_coords(j_max, k))) j_max = j;
        if (res.col_coords(j_max, k) < 0) {
            res.col_coords.col(k) *= -1;
            res.col_standard.col(k) *= -1;
            res.row_coords.col(k) *= -1;
            res.row_standard.col(k) *= -1;
        }
    }
    return res;
}

Eigen::MatrixXd project_supplementary(const CAResult& result, const Eigen::MatrixXd& profiles) {
    if (profiles.cols() != result.col_standard.rows())
        throw ValidationError("supplementary profiles: column dimension mismatch");
    Eigen::MatrixXd coords(profiles.rows(), result.n_axes());
    for (Eigen::Index i = 0; i < profiles.rows(); ++i) {
        const double total = profiles.row(i).sum();
        if (!(total > 0))
            throw ValidationError("supplementary profile " + std::to_string(i) +
                                  " has non-positive total");
        coords.row(i) = (profiles.row(i) / total) * result.col_standard;
    }
    return coords;
}

std::span<const int> default_trajectory_years() {
    static const int years[] = {1970, 1975, 1980, 1985, 1990, 1995, 2000, 2005, 2010};
    return years;
}

TrajectorySet build_trajectories(const CAResult& result, std::span<const int> analysis_years) {
    const std::set<int> allowed(analysis_years.begin(), analysis_years.end());
    TrajectorySet out;
    std::set<int> observed_years;
    std::set<std::pair<std::string, int>> seen;

    for (std::size_t i = 0; i < result.row_ids.size(); ++i) {
        const std::string& id = result.row_ids[i];
        const auto colon = id.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= id.size() ||
            id.find(':', colon + 1) != std::string::npos)
            throw ValidationError("row id '" + id + "' is not COUNTRY:YEAR");
        const std::string country = id.substr(0, colon);
        int year = 0;
        try {
            std::size_t used = 0;
            year = std::stoi(id.substr(colon + 1), &used);
            if (used != id.size() - colon - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ValidationError("row id '" + id + "': year is not an integer");
        }
        if (!allowed.count(year))
            throw ValidationError("row id '" + id + "': year " + std::to_string(year) +
                                  " outside the analysis years");
        if (!seen.emplace(country, year).second)
            throw ValidationError("duplicate trajectory point '" + id + "'");
        observed_years.insert(year);

        TrajectoryPoint pt;
        pt.year = year;
        pt.x = result.n_axes() >= 1 ? result.row_coords(i, 0) : 0.0;
        pt.y = result.n_axes() >= 2 ? result.row_coords(i, 1) : 0.0;
        out.by_country[country].push_back(pt);
    }

    for (auto& [country, pts] : out.by_country) {
        std::sort(pts.begin(), pts.end(),
                  [](const TrajectoryPoint& a, const TrajectoryPoint& b) { return a.year < b.year; });
        for (int y : observed_years) {
            if (!seen.count({country, y}))
                out.warnings.push_back("country " + country + " has no observation for year " +
                                       std::to_string(y));
        }
    }
    return out;
}

std::vector<AxisEntry> AxisReport::negatives() const {
    std::vector<AxisEntry> out;
    for (const auto& e : entries)
        if (e.coord < 0) out.push_back(e);
    return out;
}

std::vector<AxisEntry> AxisReport::positives() const {
    std::vector<AxisEntry> out;
    for (const auto& e : entries)
        if (e.coord >= 0) out.push_back(e);
    return out;
}

AxisReport axis_report(const CAResult& result, int axis) {
    if (axis < 0 || axis >= result.n_axes())
        throw ValidationError("axis " + std::to_string(axis) + " out of range (" +
                              std::to_string(result.n_axes()) + " axes)");
    AxisReport report;
    report.axis = axis;
    for (std::size_t i = 0; i < result.row_ids.size(); ++i)
        report.entries.push_back({result.row_ids[i], result.row_coords(i, axis)});
    std::sort(report.entries.begin(), report.entries.end(),
              [](const AxisEntry& a, const AxisEntry& b) {
                  return a.coord != b.coord ? a.coord < b.coord : a.row_id < b.row_id;
              });
    return report;
}

}  // namespace ceeflow
