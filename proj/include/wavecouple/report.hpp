#pragma once

#include <string>
#include <vector>

#include "wavecouple/grid.hpp"
#include "wavecouple/geometry.hpp"

namespace wavecouple {

// flat `key = value` report, deterministic ordering
class Report {
  public:
    void put(const std::string& key, double value);
    void put(const std::string& key, const std::string& value);
    void put(const std::string& key, bool value);
    std::string text() const;
    void write(const std::string& path) const;

  private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

// CSV emission: `.` decimal separator, LF endings, 17 significant digits
void write_triple_csv(const std::string& path, const Field& u, const Field& v,
                      const Field& h);
void write_field_csv(const std::string& path, const Field& f);
void write_covering_csv(const std::string& path, const CoveringSet& c);
void write_trace_csv(const std::string& path, const std::vector<double>& t,
                     const std::vector<double>& value);
void write_iteration_csv(const std::string& path, const std::vector<double>& residual,
                         const std::vector<double>& damping);

}  // namespace wavecouple
