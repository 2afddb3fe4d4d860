#include "helpers.hpp"

#include <cctype>
#include <cstdlib>

namespace testutil {

namespace {

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':';
}

}  // namespace

bool xml_well_formed(std::string_view doc) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  const std::size_t n = doc.size();
  while (i < n) {
    const char c = doc[i];
    if (c == '>') return false;
    if (c != '<') {
      ++i;
      continue;
    }
    if (doc.substr(i, 2) == "<?") {
      const std::size_t end = doc.find("?>", i);
      if (end == std::string_view::npos) return false;
      i = end + 2;
      continue;
    }
    if (doc.substr(i, 4) == "<!--") {
      const std::size_t end = doc.find("-->", i);
      if (end == std::string_view::npos) return false;
      i = end + 3;
      continue;
    }
    const bool closing = i + 1 < n && doc[i + 1] == '/';
    std::size_t j = i + (closing ? 2 : 1);
    std::string name;
    while (j < n && name_char(doc[j])) name += doc[j++];
    if (name.empty()) return false;

    // Scan to the tag end, requiring quoted attribute values.
    bool self_closing = false;
    while (j < n && doc[j] != '>') {
      if (doc[j] == '"') {
        const std::size_t q = doc.find('"', j + 1);
        if (q == std::string_view::npos) return false;
        j = q + 1;
        continue;
      }
      if (doc[j] == '<') return false;
      if (doc[j] == '/' && j + 1 < n && doc[j + 1] == '>') self_closing = true;
      ++j;
    }
    if (j >= n) return false;
    if (closing) {
      if (self_closing || stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else if (!self_closing) {
      stack.push_back(name);
    }
    i = j + 1;
  }
  return stack.empty();
}

std::vector<double> data_attribute_values(std::string_view doc, std::string_view name) {
  std::vector<double> values;
  const std::string needle = std::string(name) + "=\"";
  for (std::size_t pos = doc.find(needle); pos != std::string_view::npos;
       pos = doc.find(needle, pos + 1)) {
    const std::size_t start = pos + needle.size();
    const std::size_t end = doc.find('"', start);
    if (end == std::string_view::npos) break;
    values.push_back(std::strtod(std::string(doc.substr(start, end - start)).c_str(), nullptr));
  }
  return values;
}

}  // namespace testutil
