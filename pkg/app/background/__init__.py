"""
Background Tasks Package
Batched experiment execution off the event loop
"""
