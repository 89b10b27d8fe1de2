#pragma once

#include <string>
#include <string_view>

#include "dcmapf/model.hpp"

namespace dcmapf {

// All parsers throw ParseError carrying the 1-based line number.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

ColoredInstance parse_colored_instance(std::string_view text);
std::string serialize_colored_instance(const ColoredInstance& inst);

// True when the first content line is the colored header.
bool is_colored_text(std::string_view text);

Schedule parse_schedule(std::string_view text, int agent_count);
std::string serialize_schedule(const Schedule& s);

}  // namespace dcmapf
