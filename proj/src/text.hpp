/*
 * Copyright 2026 The demrel Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DEMREL_TEXT_HPP
#define DEMREL_TEXT_HPP

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace demrel::text {

inline std::string_view trim(std::string_view s)
{
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline std::string_view strip_comment(std::string_view s)
{
    auto p = s.find('#');
    return p == std::string_view::npos ? s : s.substr(0, p);
}

// Non-empty, comment-stripped, trimmed lines with 1-based line numbers.
inline std::vector<std::pair<int, std::string>> logical_lines(std::string_view s)
{
    std::vector<std::pair<int, std::string>> out;
    int no = 0;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto nl = s.find('\n', pos);
        auto line = s.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++no;
        auto t = trim(strip_comment(line));
        if (!t.empty()) out.emplace_back(no, std::string(t));
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

inline std::vector<std::string> words(std::string_view s)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

inline bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

} // namespace demrel::text

#endif
