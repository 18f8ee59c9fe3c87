"""
Analytical diversity-multiplexing tradeoffs of the K-pair MIMO switch channel.
"""
