#ifndef LOGTM_CSV_HPP
#define LOGTM_CSV_HPP

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace logtm {

/// Shortest decimal rendering that round-trips the double exactly.
inline std::string csv_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline std::string csv_number(long x) { return std::to_string(x); }
inline std::string csv_number(int x) { return std::to_string(x); }

class CsvTable {
  public:
    explicit CsvTable(std::string header) : text_(std::move(header)) { text_ += '\n'; }

    void add_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
    }

    const std::string& text() const { return text_; }

  private:
    std::string text_;
};

/// Atomic write: stage to <path>.tmp, then rename. Empty path writes to
/// stdout. No partial output is left behind on failure.
inline void write_csv(const std::string& path, const CsvTable& table) {
    if (path.empty()) {
        std::fwrite(table.text().data(), 1, table.text().size(), stdout);
        std::fflush(stdout);
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("write_csv: cannot open " + tmp);
        out.write(table.text().data(), static_cast<std::streamsize>(table.text().size()));
        if (!out) throw std::runtime_error("write_csv: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("write_csv: rename failed for " + path);
}

} // namespace logtm

#endif
