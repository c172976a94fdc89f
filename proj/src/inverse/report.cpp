#include "fraclab/inverse.hpp"

#include <string>

namespace fraclab {

ConditioningReport conditioning_report(const DenseMatrix& map, const std::string& label,
                                       double order, double T, int n, int K, double rank_tol) {
    if (!map.all_finite())
        throw domain_error("conditioning_report: map has non-finite entries");
    const SvdResult decomposition = svd(map, rank_tol);

    ConditioningReport report;
    report.label = label;
    report.order = order;
    report.T = T;
    report.n = n;
    report.K = K;
    report.singular_values = decomposition.singular_values;
    report.cond = decomposition.cond;
    report.numerical_rank = decomposition.numerical_rank;
    return report;
}

void write_spectrum_csv(const ConditioningReport& report, const std::string& path) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(report.singular_values.size());
    for (size_t i = 0; i < report.singular_values.size(); ++i) {
        rows.push_back({report.label, csv_number(report.order), csv_number(report.T),
                        std::to_string(report.n), std::to_string(report.K), std::to_string(i + 1),
                        csv_number(report.singular_values[i])});
    }
    write_csv(path, {"label", "order", "T", "n", "K", "index", "sigma"}, rows);
}

void write_summary_csv(const std::vector<ConditioningReport>& reports, const std::string& path) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(reports.size());
    for (const ConditioningReport& report : reports) {
        rows.push_back({report.label, csv_number(report.order), csv_number(report.T),
                        std::to_string(report.n), std::to_string(report.K),
                        csv_number(report.cond), std::to_string(report.numerical_rank)});
    }
    write_csv(path, {"label", "order", "T", "n", "K", "cond", "rank"}, rows);
}

} // namespace fraclab
