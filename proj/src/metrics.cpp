#include "cenra/metrics.hpp"

#include <cstdio>
#include <fstream>

#include "cenra/errors.hpp"

namespace cenra {

const char* MetricsLog::header() {
    return "step,task_id,episodic_return,td_loss,cra_critic_loss,cra_actor_loss,mean_r_knw,"
           "w_sim,w_per,w,epsilon";
}

static void append_cell(std::string& out, const std::optional<double>& v) {
    out += ',';
    if (!v) return;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", *v);
    out += buf;
}

std::string MetricsLog::to_csv() const {
    std::string out = header();
    out += '\n';
    for (const MetricsRow& r : rows_) {
        out += std::to_string(r.step);
        out += ',';
        out += std::to_string(r.task_id);
        append_cell(out, r.episodic_return);
        append_cell(out, r.td_loss);
        append_cell(out, r.cra_critic_loss);
        append_cell(out, r.cra_actor_loss);
        append_cell(out, r.mean_r_knw);
        append_cell(out, r.w_sim);
        append_cell(out, r.w_per);
        append_cell(out, r.w);
        append_cell(out, r.epsilon);
        out += '\n';
    }
    return out;
}

void MetricsLog::write_csv(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot write metrics file: " + file.string());
    out << to_csv();
    if (!out) throw IoError("write failed on metrics file: " + file.string());
}

}  // namespace cenra
