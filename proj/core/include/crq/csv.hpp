#pragma once

#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace crq::csv {

/// 12 significant digits, `.` decimal point, independent of the C locale.
std::string number(double v);
inline std::string number(std::optional<double> v) { return v ? number(*v) : std::string(); }

/// Comma-separated output with a mandatory header row.
class Writer {
public:
  Writer(std::ostream& out, std::vector<std::string> header);

  std::size_t columns() const noexcept { return header_.size(); }

  /// Throws std::logic_error when the field count differs from the header.
  void row(const std::vector<std::string>& fields);

private:
  std::ostream& out_;
  std::vector<std::string> header_;
};

}  // namespace crq::csv
