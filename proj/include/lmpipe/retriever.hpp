#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace lmpipe {

struct RetrievedPassages {
    std::vector<std::string> passages;   // best first
    std::vector<double> scores;          // parallel, non-increasing
};

class Retriever {
public:
    virtual ~Retriever() = default;
    virtual RetrievedPassages search(const std::string& query, int k) const = 0;
};

struct CorpusDoc {
    std::string id;
    std::string text;
};

// Deterministic lexical index: token overlap weighted by inverse document
// frequency, ties broken by corpus order.
class InMemoryRetriever final : public Retriever {
public:
    explicit InMemoryRetriever(std::vector<CorpusDoc> corpus);

    // Loads JSONL records {"id": ..., "text": ...}.
    static std::shared_ptr<InMemoryRetriever> from_jsonl(const std::filesystem::path& path);

    RetrievedPassages search(const std::string& query, int k) const override;
    std::size_t size() const { return corpus_.size(); }

private:
    std::vector<CorpusDoc> corpus_;
    std::vector<std::vector<std::string>> doc_tokens_;   // unique tokens per doc
    std::map<std::string, int> document_frequency_;
};

// Remote retrieval client: POST {"query": ..., "k": ...} returning
// {"passages": [{"text": ..., "score": ...}, ...]}.
class RemoteRetriever final : public Retriever {
public:
    explicit RemoteRetriever(std::string endpoint, int timeout_seconds = 30);
    RetrievedPassages search(const std::string& query, int k) const override;

private:
    std::string endpoint_;
    int timeout_seconds_;
};

std::vector<std::string> tokenize(const std::string& text);

} // namespace lmpipe
