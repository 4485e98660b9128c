#include "crq/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace crq::csv {

std::string number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

Writer::Writer(std::ostream& out, std::vector<std::string> header)
    : out_(out), header_(std::move(header)) {
  row(header_);
}

void Writer::row(const std::vector<std::string>& fields) {
  if (fields.size() != header_.size()) {
    throw std::logic_error("csv row has " + std::to_string(fields.size()) + " fields, header has " +
                           std::to_string(header_.size()));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
}

}  // namespace crq::csv
