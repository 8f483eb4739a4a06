def estimate_tokens(text: str) -> int:
    """
    Heuristic token count: one token per four characters, rounded up. It is
    model-agnostic and only used to keep prompts under a safety cap.
    """
    return -(-len(text) // 4)
