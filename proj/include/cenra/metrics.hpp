#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cenra {

// One logging-interval snapshot for one task. Optional fields render as empty
// CSV cells until the quantity exists (e.g. losses before burn-in).
struct MetricsRow {
    uint64_t step = 0;  // per-task environment steps so far
    int task_id = 0;
    std::optional<double> episodic_return;
    std::optional<double> td_loss;
    std::optional<double> cra_critic_loss;
    std::optional<double> cra_actor_loss;
    std::optional<double> mean_r_knw;
    std::optional<double> w_sim;
    std::optional<double> w_per;
    std::optional<double> w;
    std::optional<double> epsilon;
};

class MetricsLog {
  public:
    static const char* header();  // the fixed column list

    void append(MetricsRow row) { rows_.push_back(std::move(row)); }
    const std::vector<MetricsRow>& rows() const { return rows_; }

    std::string to_csv() const;
    void write_csv(const std::filesystem::path& file) const;

  private:
    std::vector<MetricsRow> rows_;
};

}  // namespace cenra
