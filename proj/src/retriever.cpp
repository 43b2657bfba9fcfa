#include "lmpipe/retriever.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>

#include <httplib.h>
#include <json.hpp>

#include "lmpipe/error.hpp"

namespace lmpipe {

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

InMemoryRetriever::InMemoryRetriever(std::vector<CorpusDoc> corpus) : corpus_(std::move(corpus)) {
    doc_tokens_.reserve(corpus_.size());
    for (const auto& doc : corpus_) {
        const auto tokens = tokenize(doc.text);
        const std::set<std::string> unique(tokens.begin(), tokens.end());
        doc_tokens_.emplace_back(unique.begin(), unique.end());
        for (const auto& token : unique) ++document_frequency_[token];
    }
}

std::shared_ptr<InMemoryRetriever> InMemoryRetriever::from_jsonl(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open corpus file " + path.string());
    std::vector<CorpusDoc> corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto record = nlohmann::json::parse(line);
            corpus.push_back(CorpusDoc{record.value("id", std::to_string(line_no)),
                                       record.at("text").get<std::string>()});
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("bad corpus record at " + path.string() + ":" +
                             std::to_string(line_no) + ": " + e.what());
        }
    }
    return std::make_shared<InMemoryRetriever>(std::move(corpus));
}

RetrievedPassages InMemoryRetriever::search(const std::string& query, int k) const {
    RetrievedPassages result;
    if (k < 1) throw ConfigError("retrieval requires k >= 1");
    if (corpus_.empty()) {
        std::cerr << "[lmpipe] warning: retrieval over an empty index\n";
        return result;
    }

    const auto query_tokens = tokenize(query);
    const std::set<std::string> unique_query(query_tokens.begin(), query_tokens.end());
    const double doc_count = static_cast<double>(corpus_.size());

    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(corpus_.size());
    for (std::size_t i = 0; i < corpus_.size(); ++i) {
        double score = 0.0;
        for (const auto& token : doc_tokens_[i]) {
            if (unique_query.count(token) == 0) continue;
            const auto df = document_frequency_.find(token);
            const double freq = df == document_frequency_.end() ? 0.0 : df->second;
            score += std::log((doc_count + 1.0) / (freq + 1.0)) + 1.0;
        }
        scored.emplace_back(score, i);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), scored.size());
    for (std::size_t i = 0; i < take; ++i) {
        result.passages.push_back(corpus_[scored[i].second].text);
        result.scores.push_back(scored[i].first);
    }
    return result;
}

RemoteRetriever::RemoteRetriever(std::string endpoint, int timeout_seconds)
    : endpoint_(std::move(endpoint)), timeout_seconds_(timeout_seconds) {
    if (endpoint_.empty()) throw ConfigError("remote retriever requires an endpoint URL");
}

RetrievedPassages RemoteRetriever::search(const std::string& query, int k) const {
    const std::size_t scheme_end = endpoint_.find("://");
    const std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    const std::size_t path_start = endpoint_.find('/', host_start);
    const std::string host =
        path_start == std::string::npos ? endpoint_ : endpoint_.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : endpoint_.substr(path_start);

    httplib::Client client(host);
    client.set_read_timeout(timeout_seconds_, 0);
    const nlohmann::json body{{"query", query}, {"k", k}};
    const auto response = client.Post(path, body.dump(), "application/json");
    if (!response) {
        throw TransportError("cannot reach retriever at " + endpoint_ + ": " +
                             httplib::to_string(response.error()));
    }
    if (response->status >= 400) {
        throw TransportError("retriever returned status " + std::to_string(response->status));
    }

    RetrievedPassages result;
    try {
        const auto payload = nlohmann::json::parse(response->body);
        for (const auto& item : payload.at("passages")) {
            result.passages.push_back(item.at("text").get<std::string>());
            result.scores.push_back(item.value("score", 0.0));
        }
    } catch (const nlohmann::json::exception& e) {
        throw BackendError(std::string("malformed retriever payload: ") + e.what());
    }
    return result;
}

} // namespace lmpipe
