"""Quick sanity pass over the python bindings: tokenize text, build a
network, compute a few quantities and run a tiny cross-validation."""

import stylograph as sg


def test_tokenize():
    stream = sg.tokenize("One fish, two fish. Red fish, blue fish!")
    assert stream.tokens == [
        "one", "fish", "#com", "two", "fish", "#dot",
        "red", "fish", "#com", "blue", "fish", "#exc",
    ]
    assert len(stream) == 12
    assert sg.is_punctuation_token("#dot")
    assert not sg.is_punctuation_token("fish")
    assert len(sg.PUNCTUATION_TOKENS) == 10


def test_network_and_metrics():
    stream = sg.tokenize("a b c a b c a c")
    net = sg.build_network(stream)
    assert net.vertex_count == 3
    assert net.total_weight == sum(net.strength(v) for v in range(3)) // 2
    a = net.find("a")
    assert net.surface(a) == "a"
    again = sg.Network.parse_edges(net.dump_edges())
    assert again.dump_edges() == net.dump_edges()
    assert sg.clustering_unweighted(net, a) == 1.0  # triangle
    value, restricted = sg.avg_shortest_path_global(net, False)
    assert value is not None and not restricted
    part = sg.modularity_louvain(net, True, seed=1, restarts=2)
    assert part.score >= 0.0
    assert len(part.communities) == 3


def test_shuffle_is_permutation():
    stream = sg.tokenize("the quick brown fox jumps over the lazy dog.")
    shuffled = sg.shuffle_tokens(stream, 42)
    assert sorted(shuffled.tokens) == sorted(stream.tokens)
    assert sg.shuffle_tokens(stream, 42).tokens == shuffled.tokens


def make_doc(author, d):
    words = []
    for t in range(240):
        if t % 12 < (6 if author == 0 else 2):
            words.append("alpha")
        elif t % 12 < 8:
            words.append("beta")
        else:
            words.append("w%d" % (t % 4))
        if t % 8 == 7:
            words.append("#dot")
    doc_id = "a%dd%d" % (author, d)
    return sg.DocInput(sg.TokenStream(words, doc_id), doc_id, "author%d" % author)


def test_features_and_cv():
    docs = [make_doc(a, d) for a in range(2) for d in range(4)]
    matrix, words = sg.local_features(docs, characteristics=["str"], words=3, k=2, seed=7)
    assert matrix.shape == (8, 3)
    assert matrix.columns == ["str@1", "str@2", "str@3"]
    assert words == [("en", ["alpha", "beta", "#dot"])]
    text = matrix.dumps()
    assert sg.FeatureMatrix.loads(text).dumps() == text

    cm = sg.monte_carlo_cv(matrix, train_per_class=2, reps=20, n_trees=15, seed=3)
    assert cm.reps == 20
    assert cm.accuracy_mean > 0.9


def test_clustering():
    dg = sg.hierarchical_cluster([[0.0], [0.2], [5.0]], ["a", "b", "c"])
    assert len(dg.merges) == 2
    assert dg.newick().endswith(";")


def main():
    test_tokenize()
    test_network_and_metrics()
    test_shuffle_is_permutation()
    test_features_and_cv()
    test_clustering()
    print("python smoke ok")


if __name__ == "__main__":
    main()
